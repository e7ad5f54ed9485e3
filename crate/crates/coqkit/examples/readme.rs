use coqkit::cyclic::{Coq, CyclicOrdering};
use coqkit::invariants::alexander_polynomial;
use coqkit::proper::{is_proper_coq, proper_mutate};
use coqkit::Quiver;

fn main() -> Result<(), coqkit::Error> {
    let q = Quiver::from_arrows(&["a", "b", "c"], &[("a", "b", 1), ("b", "c", 1)])?;
    let delta = alexander_polynomial(&q, &["a".into(), "b".into(), "c".into()])?;
    assert_eq!(delta.pretty("t"), "t^3 - t^2 + t - 1");

    let coq = Coq::new(q, CyclicOrdering::from_names(&["a", "b", "c"]))?;
    assert!(is_proper_coq(&coq)?);
    let mutated = proper_mutate(&coq, "b")?;
    println!("{}", mutated.quiver.to_json(Some(mutated.ordering.as_slice())));
    Ok(())
}
