# Core module exports
from .arithmetical import Arithmetical
from .elasticity_profile import ElasticityProfiles
from .factorizations import Factorizations, LengthTables
from .monoid_core import ArithmeticalParams, MonoidCore, NumericalMonoid

__all__ = [
    'Arithmetical',
    'ArithmeticalParams',
    'ElasticityProfiles',
    'Factorizations',
    'LengthTables',
    'MonoidCore',
    'NumericalMonoid',
]
