//! Drives the command-line front end in-process.

use jetinv::cli::run_command;

fn main() {
    let sessions: [&[&str]; 4] = [
        &["weight", "--expr", "u[2,0]*u[0,2]-u[1,1]^2"],
        &["eval", "--name", "J21", "--jet-of", "x^3 + x*y^2", "--point", "1,2"],
        &["equiv", "--degree", "3", "--form1", "x^3+y^3", "--form2", "x^3-y^3"],
        &["--timeout-seconds", "30", "syzygy", "discover", "--bound", "4", "--case", "quartic"],
    ];
    for args in sessions {
        let argv = std::iter::once("jetinv").chain(args.iter().copied());
        match run_command(argv) {
            Ok(r) => println!("$ jetinv {}\n{}", args.join(" "), r.to_json()),
            Err(e) => eprintln!("{e}"),
        }
    }
}
