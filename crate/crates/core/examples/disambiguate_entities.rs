//! Merge surface variants into canonical entities and show what each stage did.

use std::path::Path;

use ackmine::disambiguation::{disambiguate, DisambiguationConfig, Mention, OverrideSet};
use ackmine::gazetteer::Gazetteer;
use ackmine::{Domain, EntityLabel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let fund = Gazetteer::from_path(dir.join("fund.csv"))?;
    let uni = Gazetteer::from_path(dir.join("uni.csv"))?;
    let overrides = OverrideSet::from_path(dir.join("overrides.csv"))?;

    use EntityLabel::*;
    let mentions = [
        ("National Science Foundation", Fund, Domain::Oceanography),
        ("NSF", Fund, Domain::Economics),
        ("National Science Foundation (NSF)", Fund, Domain::Oceanography),
        ("National Nature Science Foundation of China", Fund, Domain::ComputerScience),
        ("National Natural Science Foundation of China", Fund, Domain::ComputerScience),
        ("Google", Cor, Domain::ComputerScience),
        ("Google Inc.", Cor, Domain::ComputerScience),
        ("John Doe", Ind, Domain::SocialSciences),
        ("john doe", Ind, Domain::SocialSciences),
        ("J.", Ind, Domain::Oceanography),
        ("World Bank", Fund, Domain::Economics),
    ]
    .into_iter()
    .map(|(s, l, d)| Mention::new(s, l, Some(d)))
    .collect();

    let out = disambiguate(mentions, &fund, &uni, &overrides, &DisambiguationConfig::default());
    println!("{:#?}", out.counts);
    for e in &out.entities {
        println!("{:<5} {:>2}  {}  <- {:?}", e.label.as_str(), e.mention_count, e.canonical, e.members);
    }
    Ok(())
}
