#!/usr/bin/env python

"""
Module for run document validation and report generation
"""

import json
import os
import tempfile

from dataclasses import dataclass, field, fields
from typing import Optional

import pandas as pd

from OrbitSieve import log
from OrbitSieve.core.config import get_config
from OrbitSieve.core.errors import (ConfigValidationError, InvalidFormError,
                                    NotAnIsometryError, OrbitSpecError)
from OrbitSieve.core.helpers import is_squarefree
from OrbitSieve.experiments.coordinates import FUNCTIONS
from OrbitSieve.orbits.forms import TernaryForm, search_isometries
from OrbitSieve.orbits.orbits import OrbitSpec, base_norm
from OrbitSieve.orbits.presets import PRESETS, get_preset
from OrbitSieve.sieve.bounds import MODES as SIEVE_MODES


config = get_config()

ORBIT_KEYS = {'gram', 'base', 'generators', 'closure', 'level', 'anisotropic', 'name'}

SIEVE_DEFAULTS = {
    'delta': 1.0,
    'theta': 5 / 6,
    'mode': 'classic',
    'kappa': None,
    'alpha_k': None,
    'beta_k': None,
    'u_max': None,
    'step': None,
    'omit_degree': False,
}

FLOAT_FORMAT = '%.12g'


@dataclass
class RunConfig:
    """Validated run document. Exactly one of preset and orbit is set."""
    preset: Optional[str] = None
    orbit: Optional[dict] = None
    f: str = 'hypotenuse'
    T: float = 1000.0
    radii: list = field(default_factory=list)
    moduli: list = field(default_factory=lambda: [7, 11, 13])
    sieve: dict = field(default_factory=lambda: dict(SIEVE_DEFAULTS))
    R: list = field(default_factory=lambda: [1, 2, 3, 4, 5, 6, None])
    distinct_primes: bool = False
    canonical: bool = False
    visited_cap: Optional[int] = None
    out: str = '.'
    threads: int = 1
    spec: Optional[OrbitSpec] = field(default=None, repr=False, compare=False)

    def public(self):
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name != 'spec'}


def _fail(name, message):
    raise ConfigValidationError(f'{name}: {message}')


def _number(doc, name, positive=False):
    value = doc[name]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(name, f'expected a number, got {value!r}')
    if positive and value <= 0:
        _fail(name, f'must be positive, got {value}')
    return value


def _int_list(doc, name, allow_null=False):
    value = doc[name]
    if not isinstance(value, list):
        _fail(name, f'expected a list, got {value!r}')
    for item in value:
        if item is None and allow_null:
            continue
        if isinstance(item, bool) or not isinstance(item, int):
            _fail(name, f'expected integers, got {item!r}')
    return value


def _number_list(doc, name):
    value = doc[name]
    if not isinstance(value, list):
        _fail(name, f'expected a list, got {value!r}')
    return [float(_number({name: item}, name, positive=True)) for item in value]


def _flag(doc, name):
    if not isinstance(doc[name], bool):
        _fail(name, f'expected true or false, got {doc[name]!r}')
    return doc[name]


def _inline_spec(orbit):
    unknown = set(orbit) - ORBIT_KEYS
    if unknown:
        _fail('orbit', f'unknown keys {sorted(unknown)}')
    for key in ('gram', 'base', 'generators'):
        if key not in orbit:
            _fail(f'orbit.{key}', 'is required')

    try:
        form = TernaryForm(gram=orbit['gram'], level_value=orbit.get('level', 0),
                           anisotropic=orbit.get('anisotropic', False))
    except InvalidFormError as e:
        _fail('orbit.gram', str(e))

    generators = orbit['generators']
    if generators == 'search':
        generators = search_isometries(form, special=True)
    try:
        return OrbitSpec(form=form, base=orbit['base'], generators=generators,
                         closure_mode=orbit.get('closure', 'group'), name=orbit.get('name', 'inline'))
    except NotAnIsometryError as e:
        _fail('orbit.generators', f'g^T F g != F: {e}')
    except (OrbitSpecError, ValueError, TypeError) as e:
        _fail('orbit', str(e))


def parse_config(text, out=None, threads=None):
    """Parse a JSON run document into a RunConfig.

    Unknown keys are rejected, each violation names its field and the
    resolved document is echoed at INFO.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigValidationError(f'document: not valid JSON ({e})')
    if not isinstance(doc, dict):
        _fail('document', 'expected a JSON object')

    known = {f.name for f in fields(RunConfig)} - {'spec'}
    unknown = set(doc) - known
    if unknown:
        _fail(sorted(unknown)[0], f'unknown key (allowed: {sorted(known)})')

    cfg = RunConfig(threads=config.getint('run', 'threads'))
    if 'preset' in doc and 'orbit' in doc:
        _fail('preset', 'give either preset or orbit, not both')
    if 'orbit' in doc:
        if not isinstance(doc['orbit'], dict):
            _fail('orbit', 'expected an object')
        cfg.orbit = doc['orbit']
        cfg.spec = _inline_spec(doc['orbit'])
    else:
        cfg.preset = doc.get('preset', 'pythagorean_full')
        if cfg.preset not in PRESETS:
            _fail('preset', f'unknown preset {cfg.preset!r}; choose from {sorted(PRESETS)}')
        cfg.spec = get_preset(cfg.preset)

    if 'f' in doc:
        if doc['f'] not in FUNCTIONS:
            _fail('f', f'unknown function {doc["f"]!r}; choose from {sorted(FUNCTIONS)}')
        cfg.f = doc['f']
    if 'T' in doc:
        cfg.T = float(_number(doc, 'T', positive=True))
    if cfg.T <= base_norm(cfg.spec):
        _fail('T', f'{cfg.T} does not exceed the base norm {base_norm(cfg.spec):.4f}; the ball is empty')
    if 'radii' in doc:
        cfg.radii = _number_list(doc, 'radii')
    if 'moduli' in doc:
        cfg.moduli = _int_list(doc, 'moduli')
        for q in cfg.moduli:
            if q < 1:
                _fail('moduli', f'{q} is not a positive integer')
            if not is_squarefree(q):
                _fail('moduli', f'{q} is not squarefree')
    if 'sieve' in doc:
        cfg.sieve = _parse_sieve(doc['sieve'])
    if 'R' in doc:
        cfg.R = _int_list(doc, 'R', allow_null=True)
        if any(R is not None and R < 1 for R in cfg.R):
            _fail('R', 'values must be >= 1 or null')
    for name in ('distinct_primes', 'canonical'):
        if name in doc:
            setattr(cfg, name, _flag(doc, name))
    if doc.get('visited_cap') is not None:
        cfg.visited_cap = int(_number(doc, 'visited_cap', positive=True))
    if 'out' in doc:
        if not isinstance(doc['out'], str):
            _fail('out', f'expected a path, got {doc["out"]!r}')
        cfg.out = doc['out']
    if 'threads' in doc:
        cfg.threads = int(_number(doc, 'threads', positive=True))

    if out is not None:
        cfg.out = out
    if threads is not None:
        cfg.threads = threads

    for key, value in cfg.public().items():
        marker = '' if key in doc else ' (default)'
        log.info(f'{key} = {value}{marker}')
    return cfg


def _parse_sieve(block):
    if not isinstance(block, dict):
        _fail('sieve', 'expected an object')
    unknown = set(block) - set(SIEVE_DEFAULTS)
    if unknown:
        _fail(f'sieve.{sorted(unknown)[0]}', f'unknown key (allowed: {sorted(SIEVE_DEFAULTS)})')

    sieve = dict(SIEVE_DEFAULTS)
    for key, value in block.items():
        if key == 'mode':
            if value not in SIEVE_MODES:
                _fail('sieve.mode', f'must be one of {SIEVE_MODES}, got {value!r}')
        elif key == 'omit_degree':
            if not isinstance(value, bool):
                _fail('sieve.omit_degree', f'expected true or false, got {value!r}')
        elif value is not None:
            _number({f'sieve.{key}': value}, f'sieve.{key}', positive=True)
        sieve[key] = value
    if not 0.5 < sieve['delta'] <= 1:
        _fail('sieve.delta', f'must lie in (1/2, 1], got {sieve["delta"]}')
    if not 0.5 <= sieve['theta'] < sieve['delta']:
        _fail('sieve.theta', f'must satisfy 1/2 <= theta < delta, got {sieve["theta"]}')
    return sieve


def load_config(path, out=None, threads=None):
    with open(path, 'r') as inp:
        return parse_config(inp.read(), out=out, threads=threads)


def write_csv(rows, path, columns, sort_by=None):
    """Write rows to path atomically, replacing any previous report."""
    df = pd.DataFrame(rows, columns=columns)
    if sort_by:
        df = df.sort_values(sort_by, kind='mergesort').reset_index(drop=True)

    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix='.tmp')
    try:
        with os.fdopen(fd, 'w', newline='') as handle:
            df.to_csv(handle, index=False, float_format=FLOAT_FORMAT)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
    log.debug(f'Wrote {len(df)} rows to {path}')
    return path


def write_orbit_csv(ball, path):
    """One point per row, lexicographically sorted."""
    return write_csv(ball.sorted_points(), path, columns=['x', 'y', 'z'])
