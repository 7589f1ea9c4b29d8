//! Score baseline predictions against a small hand-tagged gold set.

use std::path::Path;

use ackmine::gazetteer::Gazetteer;
use ackmine::tagging::{evaluate_tagger, BaselineTagger};
use ackmine::{EntityLabel, EntitySpan};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let tagger = BaselineTagger::new(
        &Gazetteer::from_path(dir.join("fund.csv"))?,
        &Gazetteer::from_path(dir.join("uni.csv"))?,
        &Gazetteer::from_path(dir.join("cor.csv"))?,
    );
    let text = "We thank Anna Berg and the crew of RV Meteor. Funded by the DFG under grant SFB-754.";
    let gold = vec![
        EntitySpan::new("g1", 9, 18, "Anna Berg", EntityLabel::Ind),
        EntitySpan::new("g1", 38, 44, "Meteor", EntityLabel::Misc),
        EntitySpan::new("g1", 60, 63, "DFG", EntityLabel::Fund),
        EntitySpan::new("g1", 76, 83, "SFB-754", EntityLabel::Grnb),
    ];
    let predicted = tagger.tag_text("g1", text);
    let report = evaluate_tagger(&predicted, &gold);
    println!("{:<5} {:>9} {:>6} {:>6}", "label", "precision", "recall", "f1");
    for (label, s) in &report.per_label {
        println!("{:<5} {:>9.3} {:>6.3} {:>6.3}", label.as_str(), s.precision, s.recall, s.f1);
    }
    println!("mean f1 {:.3}", report.accuracy);
    Ok(())
}
