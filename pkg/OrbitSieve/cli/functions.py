#!/usr/bin/env python3

# Runs one pipeline stage per invocation and writes its CSV reports.

import click
import json
import os

from concurrent.futures import ThreadPoolExecutor

from OrbitSieve import log
from OrbitSieve.core import errors
from OrbitSieve.core.helpers import prime_factors
from OrbitSieve.experiments import (get_function, build_sequence, distribution_report, almost_prime_table,
                                    sequence_summary)
from OrbitSieve.io import io
from OrbitSieve.modular import bad_primes, density_table, local_density, orbit_mod_q
from OrbitSieve.orbits import count_samples, estimate_delta, orbit_ball
from OrbitSieve.sieve import beta_for, saturation_table, sigma_branch_jump, solve_tables

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_CONFIG = 3
EXIT_RESOURCE = 4

CONFIG_ERRORS = (errors.ConfigValidationError, errors.ConfigurationError)
DOMAIN_ERRORS = tuple(
    obj for obj in vars(errors).values() if isinstance(obj, type) and issubclass(obj, Exception)
)

##############################################


def exit_status(e):
    if isinstance(e, CONFIG_ERRORS):
        return EXIT_CONFIG
    if isinstance(e, errors.ResourceCapError):
        return EXIT_RESOURCE
    return EXIT_DOMAIN


def report_error(e):
    """Log the failure and print one JSON line to stderr; return the exit status."""
    status = exit_status(e)
    log.error(f'{type(e).__name__}: {e}')
    click.echo(json.dumps({'status': 'error', 'error': type(e).__name__, 'message': str(e)}), err=True)
    return status


def _out(cfg, name):
    return os.path.join(cfg.out, name)


def run_orbit(cfg):
    ball = orbit_ball(cfg.spec, cfg.T, canonical=cfg.canonical, cap=cfg.visited_cap)
    io.write_orbit_csv(ball, _out(cfg, 'orbit.csv'))
    log.info(f'{ball.count} orbit points below T={cfg.T:g}')

    radii = cfg.radii or [cfg.T / 8, cfg.T / 4, cfg.T / 2, cfg.T]
    samples = count_samples(cfg.spec, radii, cap=cfg.visited_cap)
    try:
        delta = estimate_delta(samples)
        log.info(f'delta estimate from {len(samples)} radii: {delta:.4f}')
    except errors.InsufficientDataError as e:
        log.warning(f'No delta estimate: {e}')
        delta = None
    rows = [{'T': T, 'count': count, 'delta_estimate': delta} for T, count in samples]
    io.write_csv(rows, _out(cfg, 'orbit_counts.csv'), columns=['T', 'count', 'delta_estimate'], sort_by=['T'])


def run_densities(cfg):
    f = get_function(cfg.f)
    rows = density_table(cfg.spec, f, cfg.moduli, threads=cfg.threads)
    io.write_csv(rows, _out(cfg, 'densities.csv'),
                 columns=['q', 'mode', 'orbit_size', 'vanishing_count', 'omega_num', 'omega_den',
                          'reference_value', 'match_flag'],
                 sort_by=['q', 'mode'])
    mismatches = sum(row['match_flag'] == 'mismatch' for row in rows)
    log.info(f'{len(rows)} density rows, {mismatches} disagreeing with the reference')


def run_sieve_functions(cfg):
    sieve = cfg.sieve
    kappa = sieve['kappa'] or get_function(cfg.f).kappa
    beta_k = sieve['beta_k'] or beta_for(kappa)
    table = solve_tables(kappa, alpha_k=sieve['alpha_k'], beta_k=beta_k, u_max=sieve['u_max'], h=sieve['step'])
    log.info(f'sigma_{kappa}: jump at the join node {sigma_branch_jump(table):.3e}')
    cols = table.to_frame_columns()
    io.write_csv(cols, _out(cfg, 'sieve_functions.csv'), columns=['u', 'sigma', 'F', 'f'])


def run_r_values(cfg):
    rows = saturation_table(delta=cfg.sieve['delta'], omit_degree=cfg.sieve['omit_degree'])
    io.write_csv(rows, _out(cfg, 'r_values.csv'),
                 columns=['example', 'mode', 'theta', 'alpha', 'kappa', 'zeta_star', 'm_star', 'R', 'delta_star',
                          'literature_R', 'provenance', 'degree_omitted'])
    for row in rows:
        log.info(f"{row['mode']:>10} {row['example']:<9} R = {row['R']}, holds down to delta = {row['delta_star']:.4f}")


def _line_densities(cfg, f):
    excluded = bad_primes(cfg.spec) | f.divisor_primes()
    good = [q for q in sorted(set(cfg.moduli)) if q > 1 and not excluded & set(prime_factors(q))]

    def density(q):
        return q, local_density(orbit_mod_q(cfg.spec, q), f, 'line')

    with ThreadPoolExecutor(max_workers=max(1, cfg.threads)) as pool:
        return dict(pool.map(density, good))


def run_distribution(cfg):
    f = get_function(cfg.f)
    seq = build_sequence(cfg.spec, f, cfg.T, cap=cfg.visited_cap)
    summary = sequence_summary(seq)
    if not summary['archimedean_ok']:
        log.warning(f"N = {seq.N} exceeds {summary['archimedean_bound']:g}")
    report = distribution_report(seq, _line_densities(cfg, f), moduli=[1] + list(cfg.moduli))
    io.write_csv(report.rows, _out(cfg, 'distribution.csv'),
                 columns=['q', 'mass_q', 'predicted', 'abs_error', 'rel_error', 'flag'], sort_by=['q'])
    log.info(f'|A| = {seq.mass}, N = {seq.N}, zeros = {seq.zeros}')


def run_almost_primes(cfg):
    f = get_function(cfg.f)
    seq = build_sequence(cfg.spec, f, cfg.T, cap=cfg.visited_cap)
    rows = almost_prime_table(seq, cfg.R, distinct=cfg.distinct_primes)
    io.write_csv(rows, _out(cfg, 'almost_primes.csv'), columns=['R', 'count', 'density_ratio'])


COMMANDS = {
    'orbit': run_orbit,
    'densities': run_densities,
    'sieve-functions': run_sieve_functions,
    'r-values': run_r_values,
    'distribution': run_distribution,
    'almost-primes': run_almost_primes,
}


def dispatch(cfg, command):
    """Run command on a validated RunConfig and return the exit status."""
    if command not in COMMANDS:
        return report_error(errors.ConfigurationError(f'Unknown command {command!r}'))
    log.info(f'[-- {command} --]')
    try:
        COMMANDS[command](cfg)
    except DOMAIN_ERRORS as e:
        return report_error(e)
    return EXIT_OK


def run_command(ctx, command, config, out, threads):
    try:
        cfg = io.load_config(config, out=out, threads=threads)
    except DOMAIN_ERRORS as e:
        ctx.exit(report_error(e))
    ctx.exit(dispatch(cfg, command))


def run_options(func):
    func = click.option('-t', '--threads', type=click.IntRange(min=1), default=None,
                        help='Worker threads (overrides the run document)')(func)
    func = click.option('-o', '--out', type=click.Path(file_okay=False), default=None,
                        help='Output directory (overrides the run document)')(func)
    func = click.option('-c', '--config', type=click.Path(exists=True, dir_okay=False), required=True,
                        help='JSON run document')(func)
    return func

##############################################


@click.command()
@run_options
@click.pass_context
def orbit(ctx, config, out, threads):
    """Enumerate the orbit ball, dump it and estimate delta"""
    run_command(ctx, 'orbit', config, out, threads)


@click.command()
@run_options
@click.pass_context
def densities(ctx, config, out, threads):
    """Local densities omega(q) through point and line orbits mod q"""
    run_command(ctx, 'densities', config, out, threads)


@click.command('sieve-functions')
@run_options
@click.pass_context
def sieve_functions(ctx, config, out, threads):
    """Tabulate sigma, F and f"""
    run_command(ctx, 'sieve-functions', config, out, threads)


@click.command('r-values')
@run_options
@click.pass_context
def r_values(ctx, config, out, threads):
    """Saturation numbers R for every example and exponent"""
    run_command(ctx, 'r-values', config, out, threads)


@click.command()
@run_options
@click.pass_context
def distribution(ctx, config, out, threads):
    """Compare |A_q| with omega(q)|A|"""
    run_command(ctx, 'distribution', config, out, threads)


@click.command('almost-primes')
@run_options
@click.pass_context
def almost_primes(ctx, config, out, threads):
    """Count R-almost primes in A"""
    run_command(ctx, 'almost-primes', config, out, threads)
