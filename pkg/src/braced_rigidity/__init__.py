"""Exact randomised certification of global rigidity for braced plane triangulations."""

from .braced import (
    BracedTriangulation,
    BracedVerdict,
    VerificationResult,
    braced_from_json,
    coincident_witness_one_brace,
    contract_braced,
    decide_braced,
    plan_step,
    verify_certificate,
)
from .certificate import Certificate, Step, Witness
from .errors import InputError, InvariantBreach, RigidityError
from .global_rigidity import GlobalRigidityVerdict, Verdict, ght_check, hendrickson_necessary
from .linalg import DEFAULT_PRIME, FieldSpec, Matrix, RandomSource, rank
from .rigidity import Framework, VertexSplit, max_rank
from .triangulation import PlaneTriangulation, SimpleGraph, from_faces, from_rotation, validate

__version__ = "0.1.0"
