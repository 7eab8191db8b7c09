//! Text and JSON forms of a document, and their fixed points.

use blendkit::dsl::{from_json, parse, print, to_json};

fn main() -> blendkit::Result<()> {
    let doc = parse(include_str!("../data/blend.bk"))?;
    let text = print(&doc);
    print!("{text}");
    let json = to_json(&doc);
    println!("{} bytes of JSON", json.len());
    assert_eq!(from_json(&json)?, doc);
    assert_eq!(print(&parse(&text)?), text);
    Ok(())
}
