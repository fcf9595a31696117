//! Intermediate fields of ℚ(Γ) via subgroups of Γ.
//!
//!     cargo run --release --example subfields

use radicals::engine::{subfields, SubfieldList};
use radicals::RadicalGroup;

fn main() -> radicals::Result<()> {
    for spec in ["rt(2,4)", "rt(2,2), rt(3,2)", "rt(2,2), rt(3,3)", "zeta(4), rt(2,2)", "rt(-4,4)"] {
        match subfields(&RadicalGroup::parse(spec)?)? {
            SubfieldList::Complete { fields } => {
                let degrees: Vec<u64> = fields.iter().map(|f| f.degree).collect();
                println!("<Q*, {spec}>: {} fields, degrees {degrees:?}", fields.len());
            }
            SubfieldList::Inapplicable { reason } => println!("<Q*, {spec}>: inapplicable ({reason})"),
        }
    }
    Ok(())
}
