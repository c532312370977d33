// Drive the command-line front end in-process with a figure recipe.

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let code = gascatter::cli::main_with(
        ["gascatter", "find-zeros", "--preset", "fig5a-cut", "--threads", "2"],
        &mut std::io::empty(),
        &mut stdout,
        &mut stderr,
    );
    let text = String::from_utf8(stdout)?;
    for line in text.lines().filter(|l| !l.starts_with('#')).take(6) {
        println!("{line}");
    }
    if code != 0 {
        return Err(String::from_utf8_lossy(&stderr).into_owned().into());
    }
    let config = gascatter::cli::output::parse_provenance(&text)?;
    println!("recipe: {}", config.description.unwrap_or_default());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
