from .coordinates import CoordinateFunction, FUNCTIONS, get_function, coordinate_value
from .sequences import (SequenceA, DistributionReport, prime_divisor_count, build_sequence, mass_divisible,
                        distribution_report, almost_prime_count, almost_prime_table, sequence_summary)
