//! Classifying a partial map between theories, and bounded entailment in
//! many-sorted algebra.

use blendkit::dsl::{parse, Render};
use blendkit::msa::Msa;
use blendkit::pl::Pl;
use blendkit::theory::{classify_32_theory_morphism, entails};
use blendkit::RunConfig;

fn main() -> blendkit::Result<()> {
    let doc = parse(
        "sig A = {p, q}
         sig B = {r, s}
         theory T : A = { (p & q) }
         theory U : B = { r; !s }
         pmorph f : A -> B on {p} { p |-> r }
         sig N = sorts {e} ops { z : -> e; n : e -> e }
         theory Inv : N = { (forall x:e . n(n(x)) = x) }
         sentence fixed : N = (n(z) = z)",
    )?;
    let cfg = RunConfig::default();
    let rep = classify_32_theory_morphism(
        &Pl::new(),
        doc.partial::<Pl>("f")?,
        doc.theory_of::<Pl>("T")?,
        doc.theory_of::<Pl>("U")?,
        &cfg,
    )?;
    println!("theory morphism {}", rep.plain.holds);
    println!("weak 3/2 {}, strong 3/2 {}", rep.weak32.holds, rep.strong32.holds);
    println!("closed partial {}, strong partial {}", rep.closed_partial.holds, rep.strong_partial.holds);

    let msa = doc.msa();
    let e = entails(&msa, doc.theory_of::<Msa>("Inv")?, doc.sentence_of::<Msa>("fixed")?, &cfg)?;
    println!("Inv entails fixed: {} (carriers up to {:?})", e.holds, e.bound);
    if let Some(m) = &e.countermodel {
        println!("  countermodel {}", Msa::model_text(m));
    }
    Ok(())
}
