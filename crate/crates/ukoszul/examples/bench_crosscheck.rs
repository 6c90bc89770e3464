use ukoszul::gfp::PrimeField;
use ukoszul::graphs::uk_diagonal_crosscheck;
use ukoszul::Limits;

fn main() {
    let limits = Limits::default();
    let t0 = std::time::Instant::now();
    let report = uk_diagonal_crosscheck(5, PrimeField::new(2).unwrap(), &limits).unwrap();
    println!(
        "5 vertices p=2: {} graphs, {} disagreements, {:?}",
        report.graphs_checked,
        report.disagreements.len(),
        t0.elapsed()
    );
    let t0 = std::time::Instant::now();
    let report = uk_diagonal_crosscheck(4, PrimeField::new(3).unwrap(), &limits).unwrap();
    println!(
        "4 vertices p=3: {} graphs, {} disagreements, {:?}",
        report.graphs_checked,
        report.disagreements.len(),
        t0.elapsed()
    );
}
