# __init__.py
# Initialize the ein package: exact models of Ein^{p,q} and its conformal group

from .errors import EinError, InputError, DomainError, InternalAssertion
from .quadratic_forms import Signature, SplitForm, Cover, ProjectivePoint, projectivize
from .lie_algebra import AlgElement, GroupElement, Subalgebra, element_T, basis_U, centralizer
from .nilpotency import lower_central_series, nilpotence_degree, verify_degree_bound, witness_search
from .einstein_model import EinPoint, NullGeodesic, tau_flow, tau_limit, attractor_vertex
from .cartan_holonomy import GeodesicSpec, Reparametrization, HolonomyFactorization, PiecewiseCurve, develop
from .centralizer_structure import CTauElement, QElement, assemble, q_bracket
from .config import SuiteConfig, get_default_suite_config
from .suite import Report, run_suite

__all__ = [
    'EinError', 'InputError', 'DomainError', 'InternalAssertion',
    'Signature', 'SplitForm', 'Cover', 'ProjectivePoint', 'projectivize',
    'AlgElement', 'GroupElement', 'Subalgebra', 'element_T', 'basis_U', 'centralizer',
    'lower_central_series', 'nilpotence_degree', 'verify_degree_bound', 'witness_search',
    'EinPoint', 'NullGeodesic', 'tau_flow', 'tau_limit', 'attractor_vertex',
    'GeodesicSpec', 'Reparametrization', 'HolonomyFactorization', 'PiecewiseCurve', 'develop',
    'CTauElement', 'QElement', 'assemble', 'q_bracket',
    'SuiteConfig', 'get_default_suite_config',
    'Report', 'run_suite',
]
