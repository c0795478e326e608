"""Fixity of transitive coset actions of finite permutation groups."""

from .errors import (
    CapExceededError,
    DegreeMismatchError,
    FalsificationError,
    FixityError,
    GroupDataError,
    MembershipError,
    NotBijectionError,
    ParseError,
    PreconditionError,
)
from .perm import PermGroup, Permutation, build_bsgs, compose, orbit, point_stabilizer
from .ffield import Field, FieldElement, make_field, primitive_element
from .zoo import (
    alt,
    cyclic,
    dihedral,
    load_group,
    mathieu,
    pgl2,
    psl2,
    resolve_group,
    save_group,
    sym,
)

__version__ = "0.1.0"
