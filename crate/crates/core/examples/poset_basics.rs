//! Build a poset from relations, inspect its Hasse diagram and strip beat points.

use posettop::poset::Poset;

fn main() -> posettop::Result<()> {
    // any generating set works; a < c is implied
    let p = Poset::from_text("a < b\nb < c\na < c\nd < c\n# comment\n")?;
    println!("elements: {:?}", p.labels());
    for &(x, y) in p.covers() {
        println!("cover {} < {}", p.label(x), p.label(y));
    }
    println!("height {}, maximum {:?}", p.height(), p.has_maximum().map(|m| p.label(m)));
    let core = p.remove_beat_points();
    println!("after removing beat points: {:?}", core.labels());
    print!("{}", p.to_dot());
    Ok(())
}
