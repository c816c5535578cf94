// Copyright 2026 the Sessile Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use sessile_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = run(&cli, &mut out).and_then(|()| out.flush().map_err(Into::into));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sessile: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
