import os

from configparser import ConfigParser
from OrbitSieve import WD

# Used when config.ini is missing, e.g. for an installed package.
DEFAULTS = {
    'orbits': {
        'visited_cap': '100000000',
        'group_slack': '2.0',
        'monoid_slack': '1.0',
        'search_bound': '12',
        'max_generators': '0',
    },
    'densities': {
        'reference_threshold': '7',
        'band_constant': '12',
        'density_K': '100',
    },
    'sieve': {
        'step': '0.001',
        'u_max': '32',
        'zeta_margin': '0.001',
        'zeta_tol': '1e-6',
        'quad_tol': '1e-6',
        'alpha_1': '2.0',
    },
    'experiments': {
        'rel_error_threshold': '0.2',
        'archimedean_constant': '8',
        'factor_cache_size': '65536',
    },
    'run': {
        'threads': '1',
    },
}


def get_config():
    config = ConfigParser()
    config.read_dict(DEFAULTS)
    config_path = os.path.join(WD, '..', 'config.ini')
    config.read(config_path)

    return config
