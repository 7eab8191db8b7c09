//! Image factorization of a signature morphism in each inclusion system.

use blendkit::dsl::{parse, Render};
use blendkit::inclusion::InclusiveCategory;
use blendkit::institution::Institution;
use blendkit::msa::{Msa, MsaInclusionKind};
use blendkit::pl::Pl;

const DOC: &str = "
sig P = {p, q, r}
sig Q = {a, b, c}
morph f : P -> Q { p |-> a, q |-> a, r |-> b }
sig N = sorts {s, t} ops { z : -> s; f : s -> t; g : s -> t }
sig M = sorts {u, v} ops { e : -> u; h : u -> u; k : u -> u }
morph h : N -> M { sorts { s |-> u, t |-> u } ops { z |-> e; f |-> h; g |-> h } }
";

fn main() -> blendkit::Result<()> {
    let doc = parse(DOC)?;
    let pl = Pl::new();
    let f = doc.partial::<Pl>("f")?.total();
    let fact = pl.category().factorize(f)?;
    println!("SET: image {}", Pl::signature_text(&fact.image));

    let h = doc.partial::<Msa>("h")?.total();
    for kind in MsaInclusionKind::ALL {
        let msa = Msa::new(kind);
        let fact = msa.category().factorize(h)?;
        println!("{kind}: image {}", Msa::signature_text(&fact.image));
        println!("  surjection {}", Msa::morphism_text(&fact.surjection));
    }
    Ok(())
}
