"""Records of verified inequalities.

Every verification in EasyQRand boils down to comparing a left-hand side
against a right-hand side. A `CheckRecord` keeps both sides, the relation,
the slack that was allowed and whether the check passed, so that reports can
be assembled uniformly by the suites.
"""
import logging

__license__ = "LGPL"

logger = logging.getLogger(__name__)

RELATIONS = ('<', '<=', '>', '>=')


class CheckRecord:
    """A single checked inequality `lhs <relation> rhs` with slack `tol`.

    Parameters
    ----------
    inequality : str
        Short human readable name, e.g. 'Tr(M) < 4d/(delta m)'.
    lhs : float
    relation : str
        One of '<', '<=', '>', '>='.
    rhs : float
    tol : float
        Slack granted in favour of the inequality.
    instance_id : str
        Identifier of the instance the check was performed on.

    Attributes
    ----------
    margin : float
        Signed distance by which the inequality holds (positive when it holds
        without using the slack).
    passed : bool
    """

    def __init__(self, inequality, lhs, relation, rhs, tol=0.0, instance_id=''):
        if relation not in RELATIONS:
            msg = f"Unknown relation '{relation}', expected one of {RELATIONS}"
            logger.error(msg)
            raise RuntimeError(msg)
        self.inequality = inequality
        self.lhs = float(lhs)
        self.relation = relation
        self.rhs = float(rhs)
        self.tol = float(tol)
        self.instance_id = instance_id
        if relation in ('<', '<='):
            self.margin = self.rhs - self.lhs
        else:
            self.margin = self.lhs - self.rhs
        if relation in ('<', '>'):
            self.passed = bool(self.margin > -self.tol)
        else:
            self.passed = bool(self.margin >= -self.tol)

    def with_instance(self, instance_id):
        return CheckRecord(self.inequality, self.lhs, self.relation, self.rhs,
                           tol=self.tol, instance_id=instance_id)

    def to_dict(self):
        return {
            'instance_id': self.instance_id,
            'inequality': self.inequality,
            'lhs': self.lhs,
            'relation': self.relation,
            'rhs': self.rhs,
            'margin': self.margin,
            'pass': self.passed,
        }

    def __bool__(self):
        return self.passed

    def __repr__(self):
        status = 'pass' if self.passed else 'FAIL'
        return (f"CheckRecord({self.inequality}: {self.lhs!r} {self.relation} "
                f"{self.rhs!r} [{status}])")
