//! Parsing, validating and solving an instance given as text.

use smti::stability::blocking_pairs;
use smti::text::{parse_instance, serialize_instance, serialize_matching};
use smti::{Mechanism, MechanismId};

const TEXT: &str = "\
# ties on the men's side only
men 3
women 3
m1: (w1 w2) w3
m2: w2 (w1 w3)
m3: w1
w1: m3 m1 m2
w2: m1 m2
w3: m2 m1
";

fn main() {
    let inst = match parse_instance(TEXT) {
        Ok(inst) => inst,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    println!("class {:?}", inst.classify());
    print!("canonical form\n{}", serialize_instance(&inst));
    for id in MechanismId::ALL {
        match id.run(&inst) {
            Ok(m) => print!("{id}\n{}", serialize_matching(&m)),
            Err(e) => println!("{id}: {e}"),
        }
    }
    let empty = smti::Matching::default();
    for bp in blocking_pairs(&inst, &empty).unwrap() {
        println!("empty matching blocked by {bp}");
    }

    if let Err(e) = parse_instance("men 1\nwomen 1\nm1: w1 w1\nw1: m1\n") {
        println!("rejected: {e}");
    }
}
