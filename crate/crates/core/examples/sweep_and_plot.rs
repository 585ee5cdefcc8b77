// A sweep config, its CSV and a gnuplot script, all in a temporary directory.

use frobangle::cli::{main_with_args, EXIT_OK};

pub fn run_example() -> frobangle::Result<()> {
    let dir = std::env::temp_dir().join(format!("frobangle-sweep-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let config = dir.join("sweep.conf");
    std::fs::write(
        &config,
        "# shared by every block\ncurve = 2\ninterval = 0.5,1.5\ndelta = 0.15\ntheta = 0.01\n\n\
         [window]\nx = 100_000\nh = 17_783\nM = 16\n\n\
         [window]\nx = 1_000_000\nh = 125_893\nM = 32\n",
    )?;
    let csv = dir.join("sweep.csv");
    let script = dir.join("sweep.gp");

    let run = |args: &[&str]| main_with_args(std::iter::once("frobangle").chain(args.iter().copied()).map(Into::into));
    assert_eq!(
        run(&[
            "--out",
            csv.to_str().unwrap(),
            "sweep",
            "--config",
            config.to_str().unwrap()
        ]),
        EXIT_OK
    );
    assert_eq!(
        run(&[
            "--out",
            script.to_str().unwrap(),
            "plot",
            "--csv",
            csv.to_str().unwrap()
        ]),
        EXIT_OK
    );

    print!("{}", std::fs::read_to_string(&csv)?);
    println!("--- {}", script.display());
    print!("{}", std::fs::read_to_string(&script)?);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> frobangle::Result<()> {
    run_example()
}
