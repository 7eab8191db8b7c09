//! Sentence translation and model reduction along a partial morphism.

use blendkit::dsl::{parse, Render};
use blendkit::pl::Pl;
use blendkit::laws::find_non_strict_pl;
use blendkit::three_halves::{check_satisfaction, pmod_reduct};
use blendkit::RunConfig;

fn main() -> blendkit::Result<()> {
    let doc = parse(
        "sig A = {p, q}
         sig B = {r}
         pmorph f : A -> B on {p} { p |-> r }
         model M : B = {r}
         sentence s : A = (p & !!p)",
    )?;
    let pl = Pl::new();
    let cfg = RunConfig::default();
    let f = doc.partial::<Pl>("f")?;
    let m = doc.model_of::<Pl>("M")?;

    let reducts = pmod_reduct(&pl, f, m, &cfg)?;
    println!("reducts of {}:", Pl::model_text(m));
    for r in &reducts.members {
        println!("  {}", Pl::model_text(r));
    }

    let s = doc.sentence_of::<Pl>("s")?;
    let rep = check_satisfaction(&pl, f, m, s, &cfg)?;
    println!(
        "translated {} holds: {}; condition holds on {} reducts: {}",
        Pl::sentence_text(f.target(), &rep.translated),
        rep.target_holds,
        rep.reducts_checked,
        rep.holds()
    );
    if let Some(w) = find_non_strict_pl(1, 2)? {
        println!(
            "not Mod-strict: {} after {} at {}",
            Pl::partial_text(&w.phi),
            Pl::partial_text(&w.theta),
            Pl::model_text(&w.model)
        );
    }
    Ok(())
}
