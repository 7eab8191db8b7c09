//! The house/boat blend: a lax Sign-pushout of a span with a partial leg,
//! followed by model amalgamation. Prints the diagram in dot form.

use blendkit::blend::{amalgamate, cocone_to_dot, lax_cocone_with_amalgamation, lax_sign_pushout};
use blendkit::dsl::{parse, Render};
use blendkit::pl::{Pl, SetInclusions};
use blendkit::RunConfig;

fn main() -> blendkit::Result<()> {
    let doc = parse(include_str!("../data/blend.bk"))?;
    let span = doc.span::<Pl>("Blend")?;
    let cocone = lax_sign_pushout(&SetInclusions, &span)?;
    println!("blend signature {}", Pl::signature_text(cocone.apex()));
    println!("{}", cocone_to_dot(&cocone, ["Generic", "House", "Boat", "HouseBoat"]));

    let c = lax_cocone_with_amalgamation(&SetInclusions, &span, None)?;
    let a = amalgamate(
        &Pl::new(),
        &c,
        doc.model_of::<Pl>("Shared")?,
        doc.model_of::<Pl>("Dwelling")?,
        doc.model_of::<Pl>("Vessel")?,
        &RunConfig::default(),
    )?;
    println!("amalgam {} ({} completions)", Pl::model_text(&a.model), a.completions);
    Ok(())
}
