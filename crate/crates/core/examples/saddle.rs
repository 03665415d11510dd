//! Smoothed matrix game `min_x max_y <Ax, y>` over two simplices.

use lazy_sliding::linalg::Matrix;
use lazy_sliding::objective::{Objective, SmoothedSaddle};
use lazy_sliding::region::Region;
use lazy_sliding::schedule::{ProblemConstants, ScheduleVariant};
use lazy_sliding::solver::{saddle_run, SolverConfig, SolverKind};

fn main() -> lazy_sliding::Result<()> {
    // rock-paper-scissors and a variant with one biased payoff
    let a = Matrix::from_rows(&[vec![0.0, -1.0, 1.0], vec![1.0, 0.0, -1.0], vec![-1.0, 1.0, 0.0]])?;
    let shifted = Matrix::from_rows(&[vec![0.0, -1.0, 1.0], vec![1.0, 0.0, -1.0], vec![-1.0, 1.0, 1.0]])?;
    for (name, m) in [("rock-paper-scissors", a), ("biased", shifted)] {
        let obj = SmoothedSaddle::new(m)?;
        let region = Region::simplex(3);
        let c = ProblemConstants::new(region.diameter()).with_saddle(
            obj.operator_norm()?,
            obj.prox_modulus(),
            obj.smoothing_diameter_sq().sqrt(),
        );
        let n = 500;
        let cfg = SolverConfig::new(SolverKind::CalgdSaddle, ScheduleVariant::SaddleStatic { horizon: n }, c, n);
        let res = saddle_run(&cfg, &obj, &region)?;
        println!(
            "{name:<20} max_i (A y_N)_i = {:.4}  y_N = {:?}",
            obj.value(&res.y)?,
            res.y.iter().map(|v| (v * 1e4).round() / 1e4).collect::<Vec<_>>()
        );
    }
    Ok(())
}
