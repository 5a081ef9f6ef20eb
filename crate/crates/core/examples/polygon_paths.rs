//! Polygons from their side centres: vertex reconstruction, the symplectic
//! area and its gradient, closure of even polygons, and the tangency of
//! short chords to a trajectory.

use phasereflect::polygon::*;
use phasereflect::symplectic::{HamiltonianModel, PhasePoint};

fn pt(p: f64, q: f64) -> PhasePoint {
    PhasePoint::new(vec![p, q]).unwrap()
}

fn main() -> phasereflect::Result<()> {
    let tri = PolygonPath::new(vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(0.0, 1.0)])?;
    println!("vertices {:?}", tri.reconstruct_vertices()?.iter().map(|v| v.as_slice().to_vec()).collect::<Vec<_>>());
    println!("area {:.6}", tri.symplectic_area()?);
    for d in 0..3 {
        let side = tri.open_polygon_side(d)?;
        let grad = tri.area_gradient_fd(d)?;
        println!("side {d}: {:?}  -J∇Δ {:?}", side.as_slice(), (-&grad.j()).as_slice());
    }

    let mut a = vec![pt(1.0, 0.5), pt(-0.4, 0.9)];
    let b = vec![pt(0.2, -1.1), pt(0.7, 0.3)];
    close_pair(&mut a, &b)?;
    let square = PolygonPath::new([a, b].concat())?;
    for v0 in [pt(0.0, 0.0), pt(2.0, -1.0)] {
        println!("closed quadrilateral from {:?}: area {:.6}", v0.as_slice(), square.area_from(v0.clone())?);
    }

    let osc = HamiltonianModel::spherical(1.0, PhasePoint::zeros(1))?;
    let order = tangency_order(&osc, &pt(0.0, 1.0), 0.1, &[4, 8, 16, 32])?;
    println!("tangency order {order:.3}");
    Ok(())
}
