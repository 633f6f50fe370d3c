import click

from OrbitSieve import log, __version__
from OrbitSieve.cli.functions import orbit, densities, sieve_functions, r_values, distribution, almost_primes


@click.group()
@click.option('-l', '--log-level', help='Logging level',
              type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR'], case_sensitive=False), default='INFO')
@click.version_option(__version__)
def root(log_level):
    """Affine sieve experiments on orbits of ternary quadratic forms"""
    log.setLevel(log_level.upper())


root.add_command(orbit)
root.add_command(densities)
root.add_command(sieve_functions)
root.add_command(r_values)
root.add_command(distribution)
root.add_command(almost_primes)
