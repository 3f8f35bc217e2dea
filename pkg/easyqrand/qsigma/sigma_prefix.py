"""Finite prefixes of quantum Sigma_1 sets."""
import logging
import numpy as np

from easyqrand.constants import resolve_tolerances
from easyqrand.utils.helpers import bitstring_to_index, check_bitstring
from .projector import Projector, inclusion_defect, span_of_union

__license__ = "LGPL"

logger = logging.getLogger(__name__)


class QSigmaPrefix:
    """Sequence (P_1, ..., P_N) of special projections, P_k on k qubits.

    Consecutive levels are nested: range(P_k (x) I) lies in range(P_{k+1}).

    Parameters
    ----------
    projs : sequence of Projector or None
        Explicit levels, level k at position k - 1.
    depth : int or None
        Required with `recipe`; otherwise taken from `projs`.
    recipe : callable or None
        Function k -> Projector evaluated on demand.
    params : dict or None
        Description of the recipe, kept for serialization.
    tols : Tolerances or None
    validate : bool, default=True
        Check level sizes and the nesting of explicit levels. Recipes are
        checked level by level as they are evaluated when `validate` is set.
    """

    def __init__(self, projs=None, depth=None, recipe=None, params=None, tols=None,
                 validate=True):
        if (projs is None) == (recipe is None):
            msg = "QSigmaPrefix needs exactly one of 'projs' or 'recipe'"
            logger.error(msg)
            raise RuntimeError(msg)
        self._recipe = recipe
        self._cache = {}
        self._tols = tols
        self._validate = validate
        self.params = dict(params or {})
        if projs is not None:
            projs = list(projs)
            self.depth = len(projs)
            for k, proj in enumerate(projs, start=1):
                self._check_level(k, proj)
                self._cache[k] = proj
            if validate:
                self.validate(tols)
        else:
            if depth is None or depth < 0:
                msg = "A recipe QSigmaPrefix needs a nonnegative depth"
                logger.error(msg)
                raise RuntimeError(msg)
            self.depth = int(depth)

    @staticmethod
    def _check_level(k, proj):
        if not isinstance(proj, Projector):
            msg = f"Level {k} of a QSigmaPrefix must be a Projector, got {type(proj).__name__}"
            logger.error(msg)
            raise RuntimeError(msg)
        if proj.qubits != k:
            msg = f"Level {k} projector acts on {proj.qubits} qubits"
            logger.error(msg)
            raise RuntimeError(msg)

    @property
    def is_lazy(self):
        return self._recipe is not None

    def level(self, k):
        if not 1 <= k <= self.depth:
            msg = f"Level {k} outside 1..{self.depth}"
            logger.error(msg)
            raise RuntimeError(msg)
        if k not in self._cache:
            proj = self._recipe(k)
            self._check_level(k, proj)
            self._cache[k] = proj
            if self._validate and k - 1 in self._cache:
                self._check_nesting(k - 1, resolve_tolerances(self._tols))
        return self._cache[k]

    @property
    def projs(self):
        return [self.level(k) for k in range(1, self.depth + 1)]

    @property
    def is_diagonal(self):
        return all(proj.is_diagonal for proj in self.projs)

    def nesting_defect(self, k):
        """Defect of range(P_k (x) I) inside range(P_{k+1})."""
        return inclusion_defect(self.level(k).tensor_identity(), self.level(k + 1))

    def _check_nesting(self, k, tols):
        defect = self.nesting_defect(k)
        if defect > tols.nest:
            msg = f"Levels {k} and {k + 1} are not nested (defect {defect:.3e})"
            logger.error(msg)
            raise RuntimeError(msg)

    def validate(self, tols=None):
        tols = resolve_tolerances(tols)
        for k in range(1, self.depth):
            self._check_nesting(k, tols)

    def ranks(self):
        return [proj.rank for proj in self.projs]

    def truncate(self, depth):
        if depth == self.depth:
            return self
        if not 0 <= depth <= self.depth:
            msg = f"Cannot truncate depth {self.depth} prefix to depth {depth}"
            logger.error(msg)
            raise RuntimeError(msg)
        return QSigmaPrefix(self.projs[:depth], params=self.params, validate=False)

    def __repr__(self):
        return f"QSigmaPrefix(depth={self.depth}, ranks={self.ranks()})"


def zero_prefix(depth):
    """The empty q-Sigma_1 set, P_k = 0 at every level."""
    return QSigmaPrefix(depth=depth, recipe=Projector.zero, params={'recipe': 'zero'})


def full_prefix(depth):
    """The whole space, P_k = I at every level."""
    return QSigmaPrefix(depth=depth, recipe=Projector.identity, params={'recipe': 'full'})


def cylinder_prefix(sigma, depth):
    """Projections onto the cylinder of `sigma`.

    Level k projects onto the span of |tau>, tau of length k extending sigma
    (zero for k < |sigma|). The levels are diagonal and nested.
    """
    check_bitstring(sigma)
    base = bitstring_to_index(sigma)

    def recipe(k):
        if k < len(sigma):
            return Projector.zero(k)
        shift = k - len(sigma)
        return Projector.from_support(k, (base << shift) + np.arange(2 ** shift))

    return QSigmaPrefix(depth=depth, recipe=recipe,
                        params={'recipe': 'cylinder', 'sigma': sigma})


def path_prefix(x, depth):
    """P_k = |x|k><x|k| at every level.

    The levels do not satisfy range nesting (|x|k> (x) |1 - x_{k+1}> is lost),
    so the prefix is built unvalidated. It is the usual single-path test on
    which rho_X attains value 1.
    """
    check_bitstring(x)
    if len(x) < depth:
        msg = f"Bitstring of length {len(x)} is shorter than depth {depth}"
        logger.error(msg)
        raise RuntimeError(msg)

    def recipe(k):
        return Projector.from_support(k, [bitstring_to_index(x[:k])])

    return QSigmaPrefix(depth=depth, recipe=recipe, params={'recipe': 'path', 'x': x[:depth]},
                        validate=False)


def from_projectors(projs, tols=None, validate=True):
    """QSigmaPrefix from explicit projectors, matrices or basis-index sets."""
    built = []
    for k, proj in enumerate(projs, start=1):
        if not isinstance(proj, Projector):
            proj = Projector.from_matrix(proj, qubits=k, tols=tols)
        built.append(proj)
    return QSigmaPrefix(built, tols=tols, validate=validate)


def tensor_closure(projs, tols=None):
    """Smallest nested prefix whose level k contains range(projs[k]).

    Level k is the span of range(projs[k]) and range(Q_{k-1} (x) I).
    """
    closed = []
    for k, proj in enumerate(projs, start=1):
        parts = [proj] if not closed else [proj, closed[-1].tensor_identity()]
        closed.append(span_of_union(parts, k, tols=tols))
    return QSigmaPrefix(closed, tols=tols)
