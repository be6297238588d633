//! Writes a series document and drives the command-line front end on it,
//! exactly as `qseries limit <file>` would.

use qseries::cli::{self, SeriesDocument};
use qseries::radial::RootOfUnity;
use qseries::series::{PeriodicCoefficients, PolynomialExponent, SeriesSpec};

fn main() -> qseries::Result<()> {
    let spec = SeriesSpec::polynomial(
        PeriodicCoefficients::from_reals(&[1.0, 0.0, -1.0], 256)?,
        PolynomialExponent::from_ints(&[0, 1, 1])?,
    );
    let doc = SeriesDocument::from_spec(&spec, &RootOfUnity::one());
    let dir = std::env::temp_dir().join("qseries-cli-example");
    std::fs::create_dir_all(&dir).map_err(|source| qseries::Error::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let path = dir.join("series.json");
    std::fs::write(&path, doc.to_json()).map_err(|source| qseries::Error::Io {
        path: path.display().to_string(),
        source,
    })?;

    let p = path.display().to_string();
    let code = cli::run(["qseries", "limit", p.as_str(), "--precision", "128"]);
    eprintln!("limit exited with {code}");
    let code = cli::run([
        "qseries",
        "asympt",
        p.as_str(),
        "--precision",
        "128",
        "--verify",
        "--csv",
    ]);
    eprintln!("asympt exited with {code}");
    Ok(())
}
