#![no_main]

use clap::Parser;
use libfuzzer_sys::fuzz_target;
use qss_cli::Cli;

// Argument parsing only; the commands themselves are not run.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let args = std::iter::once("qss5").chain(text.split('\0'));
    let _ = Cli::try_parse_from(args);
});
