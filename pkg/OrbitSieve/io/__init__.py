from .io import RunConfig, parse_config, load_config, write_csv, write_orbit_csv
