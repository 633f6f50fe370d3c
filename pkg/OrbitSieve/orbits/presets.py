"""
Shipped orbit presets.

The Berggren matrices act on column vectors, x -> g x, and generate the tree
of primitive Pythagorean triples with odd first entry from (3,4,5). Entries
grow strictly along the tree, so monoid enumeration needs no pruning slack.
"""

from functools import lru_cache

from OrbitSieve import log
from OrbitSieve.core.config import get_config
from OrbitSieve.orbits.forms import TernaryForm, IsometryMatrix, search_isometries
from OrbitSieve.orbits.orbits import OrbitSpec


config = get_config()

PYTHAGOREAN_FORM = TernaryForm(gram=((1, 0, 0), (0, 1, 0), (0, 0, -1)), level_value=0, name='x^2+y^2-z^2')
ANISO_FORM = TernaryForm(gram=((1, 0, 0), (0, 1, 0), (0, 0, -3)), level_value=-1, anisotropic=True,
                         name='x^2+y^2-3z^2')

BERGGREN_A = ((1, -2, 2), (2, -1, 2), (2, -2, 3))
BERGGREN_B = ((1, 2, 2), (2, 1, 2), (2, 2, 3))
BERGGREN_C = ((-1, 2, 2), (-2, 1, 2), (-2, 2, 3))


def pythagorean_full():
    gens = [IsometryMatrix.checked(PYTHAGOREAN_FORM, g) for g in (BERGGREN_A, BERGGREN_B, BERGGREN_C)]
    return OrbitSpec(form=PYTHAGOREAN_FORM, base=(3, 4, 5), generators=tuple(gens),
                     closure_mode='monoid', slack=1.0, name='pythagorean_full')


def pythagorean_thin2():
    # The two parabolic (trace 3) outer branches; the limit set has dimension < 1.
    gens = [IsometryMatrix.checked(PYTHAGOREAN_FORM, g) for g in (BERGGREN_A, BERGGREN_C)]
    return OrbitSpec(form=PYTHAGOREAN_FORM, base=(3, 4, 5), generators=tuple(gens),
                     closure_mode='monoid', slack=1.0, name='pythagorean_thin2')


def aniso_3(bound=None, max_generators=None):
    if max_generators is None:
        max_generators = config.getint('orbits', 'max_generators')
    gens = search_isometries(ANISO_FORM, bound=bound, special=True)
    if max_generators > 0:
        gens = gens[:max_generators]
    log.debug(f'aniso_3 uses {len(gens)} searched generators')
    return OrbitSpec(form=ANISO_FORM, base=(1, 1, 1), generators=tuple(gens),
                     closure_mode='group', slack=config.getfloat('orbits', 'group_slack'), name='aniso_3')


PRESETS = {
    'pythagorean_full': pythagorean_full,
    'pythagorean_thin2': pythagorean_thin2,
    'aniso_3': aniso_3,
}


@lru_cache(maxsize=None)
def get_preset(name):
    """Return the OrbitSpec registered under name."""
    if name not in PRESETS:
        raise KeyError(f'Unknown preset {name!r}; choose from {sorted(PRESETS)}')
    return PRESETS[name]()
