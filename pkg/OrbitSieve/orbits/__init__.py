from .forms import TernaryForm, IsometryMatrix, evaluate_form, is_isometry, search_isometries
from .orbits import OrbitSpec, OrbitBall, orbit_ball, count_samples, estimate_delta
from .presets import get_preset, PRESETS
