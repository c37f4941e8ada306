__version__ = '0.1.0'

from .cyclo import JPParams  # noqa: F401
from .cyclo import ResidueData  # noqa: F401
from .cyclo import SymbolicParams  # noqa: F401
from .cyclo import WeightVector  # noqa: F401
from .cyclo import galois_twist  # noqa: F401
from .cyclo import params_from_lambdas  # noqa: F401
from .cyclo import params_from_weights  # noqa: F401
from .cyclo import reduce_params  # noqa: F401
from .cyclo import rjp_membership  # noqa: F401
from .cyclo import split_prime  # noqa: F401
from .exactalg import DualNumbers  # noqa: F401
from .exactalg import Echelon  # noqa: F401
from .exactalg import FiniteField  # noqa: F401
from .exactalg import GaloisRing  # noqa: F401
from .exactalg import Involution  # noqa: F401
from .exactalg import Matrix  # noqa: F401
from .exactalg import SplitAlgebra  # noqa: F401
from .exactalg import element_order  # noqa: F401
from .exactalg import field_make  # noqa: F401
from .exactalg import witt_vectors2  # noqa: F401
from .forms import FormMatrix  # noqa: F401
from .forms import SignatureQuery  # noqa: F401
from .forms import invariant_form  # noqa: F401
from .forms import signature_formula  # noqa: F401
from .forms import signature_numeric  # noqa: F401
from .grpengine import BSGS  # noqa: F401
from .grpengine import ClassificationResult  # noqa: F401
from .grpengine import bsgs_build  # noqa: F401
from .grpengine import classical_order  # noqa: F401
from .grpengine import classify  # noqa: F401
from .grpengine import pairwise_test  # noqa: F401
from .jprep import JPTuple  # noqa: F401
from .jprep import braid_act  # noqa: F401
from .jprep import construct  # noqa: F401
from .jprep import meataxe  # noqa: F401
from .jprep import restrict  # noqa: F401
from .jprep import subset_spectrum  # noqa: F401
from .jprep import verify  # noqa: F401
from .lifting import LieElement  # noqa: F401
from .lifting import LiftParams  # noqa: F401
from .lifting import jordan_parts  # noqa: F401
from .lifting import lie_detect  # noqa: F401
from .lifting import sl2_w2_split_test  # noqa: F401
from .lifting import span_full  # noqa: F401
from .prymstats import CoverCombinatorics  # noqa: F401
from .prymstats import SelmerQuery  # noqa: F401
from .prymstats import burnside_coset_average  # noqa: F401
from .prymstats import expected_selmer  # noqa: F401
from .prymstats import prym_rank  # noqa: F401
from .prymstats import sl_orbit_count  # noqa: F401
from .prymstats import torus_rank  # noqa: F401
from .prymstats import weight_dim  # noqa: F401
from .prymstats import wild_multiplicity  # noqa: F401
from .reporters import JSONReporter  # noqa: F401
from .reporters import SweepCache  # noqa: F401
from .reporters import TableReporter  # noqa: F401
from .utils import JPError  # noqa: F401
from .utils import Settings  # noqa: F401

__cyclo__ = [
    'JPParams',
    'ResidueData',
    'SymbolicParams',
    'WeightVector',
    'galois_twist',
    'params_from_lambdas',
    'params_from_weights',
    'reduce_params',
    'rjp_membership',
    'split_prime',
    ]  # noqa E123

__exactalg__ = [
    'DualNumbers',
    'Echelon',
    'FiniteField',
    'GaloisRing',
    'Involution',
    'Matrix',
    'SplitAlgebra',
    'element_order',
    'field_make',
    'witt_vectors2',
    ]  # noqa E123

__forms__ = [
    'FormMatrix',
    'SignatureQuery',
    'invariant_form',
    'signature_formula',
    'signature_numeric',
    ]  # noqa E123

__grpengine__ = [
    'BSGS',
    'ClassificationResult',
    'bsgs_build',
    'classical_order',
    'classify',
    'pairwise_test',
    ]  # noqa E123

__jprep__ = [
    'JPTuple',
    'braid_act',
    'construct',
    'meataxe',
    'restrict',
    'subset_spectrum',
    'verify',
    ]  # noqa E123

__lifting__ = [
    'LieElement',
    'LiftParams',
    'jordan_parts',
    'lie_detect',
    'sl2_w2_split_test',
    'span_full',
    ]  # noqa E123

__prymstats__ = [
    'CoverCombinatorics',
    'SelmerQuery',
    'burnside_coset_average',
    'expected_selmer',
    'prym_rank',
    'sl_orbit_count',
    'torus_rank',
    'weight_dim',
    'wild_multiplicity',
    ]  # noqa E123

__reporters__ = [
    'JSONReporter',
    'SweepCache',
    'TableReporter',
    ]  # noqa E123

__utils__ = [
    'JPError',
    'Settings',
    ]  # noqa E123

__all__ = __cyclo__ + __exactalg__ + __forms__ + __grpengine__ + __jprep__ + __lifting__ + __prymstats__ + __reporters__ + __utils__
