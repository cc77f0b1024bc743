//! Regenerates the canonical fixture files under `fixtures/`.
//!
//! Run from the workspace root:
//!
//! ```text
//! cargo run -p rcards --example regen_fixtures
//! ```

use std::path::Path;

use rcards::catalog::{strategy_331_m10, strategy_331_m6};
use rcards::design::{cyclic_design, rotated_family_8_4, sts_construct};
use rcards::fileio::{emit_design_family, emit_strategy};
use rcards::hand;
use rcards::search::{enumerate_designs, max_disjoint_family};

fn main() -> std::io::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    std::fs::create_dir_all(&dir)?;

    std::fs::write(
        dir.join("strategy_331_m6.rc"),
        emit_strategy(&strategy_331_m6()),
    )?;
    std::fs::write(
        dir.join("strategy_331_m10.rc"),
        emit_strategy(&strategy_331_m10()),
    )?;
    std::fs::write(
        dir.join("design_2_13_4_cyclic.rc"),
        emit_design_family(&[cyclic_design(&[hand![0, 1, 3, 9]], 13).unwrap()]),
    )?;
    std::fs::write(
        dir.join("family_3_8_4_ten.rc"),
        emit_design_family(&rotated_family_8_4()),
    )?;
    std::fs::write(
        dir.join("design_sts_9.rc"),
        emit_design_family(&[sts_construct(9).unwrap()]),
    )?;

    // A large set of seven disjoint STS(9), found by exact search.
    let sts9 = enumerate_designs(2, 9, 3).expect("enumeration");
    let best = max_disjoint_family(&sts9).expect("clique search");
    assert_eq!(best.size, 7);
    std::fs::write(
        dir.join("large_set_sts9.rc"),
        emit_design_family(&best.family),
    )?;

    println!("fixtures written to {}", dir.display());
    Ok(())
}
