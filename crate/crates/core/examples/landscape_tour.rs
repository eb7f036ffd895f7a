//! Builds a Moving Peaks landscape and watches its optimum drift.

use dcpso::mpb::{Landscape, MpbSettings, PeakShape};

fn main() -> dcpso::Result<()> {
    let mut landscape = Landscape::new(MpbSettings::default(), 7)?;
    println!("{} peaks in {} dimensions", landscape.peaks().len(), landscape.dims());

    for change in 0..5 {
        let (location, height) = landscape.current_optimum();
        let rounded: Vec<String> = location.iter().map(|x| format!("{x:.2}")).collect();
        println!("change {change}: optimum {height:.3} at [{}]", rounded.join(", "));
        landscape.advance();
    }

    let centre = vec![50.0; landscape.dims()];
    println!("f(centre) = {:.3} after {} evaluation", landscape.evaluate(&centre)?, landscape.evaluations());

    let cone = Landscape::new(MpbSettings { shape: PeakShape::Cone, ..Default::default() }, 7)?;
    let (_, top) = cone.current_optimum();
    println!("cone-shaped variant has its optimum at {top:.3}");
    Ok(())
}
