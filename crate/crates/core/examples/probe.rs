use grushin_core::mcp::*;
use grushin_core::*;
fn main() {
    let t0 = std::time::Instant::now();
    let r = set_contraction_profile(
        Point::new(1.0, 0.0),
        &Region::disk(Point::new(3.0, 0.0), 0.5),
        &[0.25, 0.5, 0.75],
        4.0,
        SpaceKind::HalfPlanePlus,
        1_000_000,
        0,
    )
    .unwrap();
    println!("{:?} {:?}", t0.elapsed(), r);
    let t0 = std::time::Instant::now();
    let r = set_contraction_profile(
        Point::new(0.3, 0.2),
        &Region::disk(Point::new(-0.5, 1.0), 0.8),
        &[0.25, 0.5, 0.75],
        5.0,
        SpaceKind::FullPlane,
        1_000_000,
        0,
    )
    .unwrap();
    println!("{:?} {:?}", t0.elapsed(), r);
}
