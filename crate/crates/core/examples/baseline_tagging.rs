//! Tag acknowledgement texts with the dictionary tagger and pair people with
//! nearby institutions.

use std::path::Path;

use ackmine::gazetteer::Gazetteer;
use ackmine::tagging::{link_person_affiliation, BaselineTagger, DEFAULT_LINK_WINDOW};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let tagger = BaselineTagger::new(
        &Gazetteer::from_path(dir.join("fund.csv"))?,
        &Gazetteer::from_path(dir.join("uni.csv"))?,
        &Gazetteer::from_path(dir.join("cor.csv"))?,
    );
    let text = "We thank Maria Lopez of the University of Bremen and Tom Brown. \
                This work was funded by the National Science Foundation (NSF) under grant OCE-1234567 \
                and by Google.";
    let spans = tagger.tag_text("example", text);
    for s in &spans {
        println!("{:>4}..{:<4} {:<5} {}", s.start, s.end, s.label.as_str(), s.surface);
    }
    println!();
    for link in link_person_affiliation(&spans, DEFAULT_LINK_WINDOW) {
        let aff = link.affiliation.as_ref().map_or("-", |a| a.surface.as_str());
        println!("{} -> {aff}", link.person.surface);
    }
    Ok(())
}
