"""Environment preparation, subcommand dispatch and worker fan-out."""
