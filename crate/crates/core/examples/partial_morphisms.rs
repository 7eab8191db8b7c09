//! Composition, order and factorization of partial signature morphisms.

use blendkit::dsl::{parse, Render};
use blendkit::partial::{compose, factorize_partial, leq};
use blendkit::pl::{Pl, SetInclusions};

fn main() -> blendkit::Result<()> {
    let doc = parse(
        "sig A = {x, y, z}
         sig B = {u, v}
         sig C = {w}
         pmorph f : A -> B on {x, y} { x |-> u, y |-> v }
         pmorph g : B -> C on {u} { u |-> w }
         pmorph f0 : A -> B on {x} { x |-> u }",
    )?;
    let f = doc.partial::<Pl>("f")?;
    let g = doc.partial::<Pl>("g")?;
    let fg = compose(&SetInclusions, f, g)?;
    println!("f;g = {}", Pl::partial_text(&fg));

    let f0 = doc.partial::<Pl>("f0")?;
    println!("f0 <= f: {}", leq(&SetInclusions, f0, f)?);
    println!("f <= f0: {}", leq(&SetInclusions, f, f0)?);

    let fact = factorize_partial(&SetInclusions, &fg)?;
    println!("image of f;g: {}", Pl::signature_text(&fact.image));
    println!("  surjection {}", Pl::partial_text(&fact.surjection));
    println!("  inclusion  {}", Pl::partial_text(&fact.inclusion));
    Ok(())
}
