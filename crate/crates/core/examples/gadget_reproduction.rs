//! Enumerates the stable matchings of the three gadget instances and replays
//! the deletion argument for the mechanism that targets each one.

use smti::oracle::{enumerate_stable_matchings, gadget_audit, Gadget};
use smti::MechanismId;

fn main() -> smti::Result<()> {
    for (gadget, mech) in [
        (Gadget::I1, MechanismId::TiebreakMan),
        (Gadget::I2, MechanismId::TiebreakWoman),
        (Gadget::I3, MechanismId::OneTmFifteen),
    ] {
        println!("{gadget}:");
        for m in enumerate_stable_matchings(&gadget.instance())? {
            println!("  stable {m} (size {})", m.len());
        }
        let audit = gadget_audit(&mech, gadget)?;
        println!("  {mech} outputs {}", audit.output);
        println!("  {:?}: {}", audit.verdict, audit.detail);
    }
    Ok(())
}
