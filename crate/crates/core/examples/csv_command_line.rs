// The command-line front end driven in-process: evaluate a CSV trace, then
// stream the same data through the monitor.

use std::error::Error;

pub fn run_example() -> Result<(String, String), Box<dyn Error>> {
    let dir = tempfile::tempdir()?;
    let spec = dir.path().join("grant.stl");
    let trace = dir.path().join("trace.csv");
    std::fs::write(
        &spec,
        "input float req\ninput float gnt\noutput float rob\nperiod 1 s\n\
         rob = historically[0:3]((gnt >= 3) implies once[0:2](req >= 3))\n",
    )?;
    std::fs::write(&trace, "time,req,gnt\n0,5,0\n1,0,0\n2,0,4\n3,0,0\n4,0,6\n")?;
    let (spec, trace) = (spec.to_str().unwrap_or_default(), trace.to_str().unwrap_or_default());

    let mut offline = Vec::new();
    let code = stlmon::cli::run(
        ["stlmon", "eval", "--spec", spec, "--trace", trace],
        &mut std::io::empty(),
        &mut offline,
        &mut std::io::sink(),
    );
    assert_eq!(code, 0);

    let records = "0,req=5,gnt=0\n1,req=0,gnt=0\n2,req=0,gnt=4\n3,req=0,gnt=0\n4,req=0,gnt=6\n";
    let mut online = Vec::new();
    let code = stlmon::cli::run(
        ["stlmon", "monitor", "--spec", spec],
        &mut records.as_bytes(),
        &mut online,
        &mut std::io::sink(),
    );
    assert_eq!(code, 0);

    let (offline, online) = (String::from_utf8(offline)?, String::from_utf8(online)?);
    println!("stlmon eval:\n{offline}\nstlmon monitor:\n{online}");
    Ok((offline, online))
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()?;
    Ok(())
}
