from .modular import (ResidueVector, ProjectiveLine, ModularOrbit, LocalDensityValue, LineCanonicalizer,
                      bad_primes, orbit_mod_q, vanishing_counts, local_density, omega_reference,
                      density_table, local_density_product, sieve_dimension_estimate)
