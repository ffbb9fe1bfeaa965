"""Property-based checks over generated inputs."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from orthosym import scalar
from orthosym.quat import Quaternion, qmul
from orthosym.scalar import eval_scalar, format_scalar, parse_scalar

_rationals = st.builds(
    Fraction, st.integers(min_value=-48, max_value=48), st.integers(min_value=1, max_value=24)
)

_leaves = st.one_of(
    st.builds(scalar.rational, _rationals),
    st.builds(scalar.sqrt_int, st.integers(min_value=1, max_value=60)),
    st.builds(scalar.cospi, _rationals),
    st.builds(scalar.sinpi, _rationals),
)


def _binary(children):
    def guarded_div(a, b):
        try:
            return scalar.div(a, b)
        except scalar.ScalarDomainError:
            return scalar.sub(a, b)

    return st.one_of(
        st.builds(scalar.add, children, children),
        st.builds(scalar.sub, children, children),
        st.builds(scalar.mul, children, children),
        st.builds(guarded_div, children, children),
        st.builds(scalar.neg, children),
    )


_trees = st.recursive(_leaves, _binary, max_leaves=24)


@given(_trees)
@settings(max_examples=300, deadline=None)
def test_scalar_print_parse_round_trip(tree):
    assert eval_scalar(parse_scalar(format_scalar(tree))) == eval_scalar(tree)


@given(_trees)
@settings(max_examples=100, deadline=None)
def test_scalar_evaluation_is_deterministic(tree):
    assert eval_scalar(tree) == eval_scalar(parse_scalar(format_scalar(tree)))
    text = format_scalar(tree)
    assert parse_scalar(text).value == parse_scalar(text).value


_components = st.floats(min_value=-4.0, max_value=4.0, allow_nan=False, allow_infinity=False)
_quaternions = st.builds(Quaternion, _components, _components, _components, _components)


@given(_quaternions, _quaternions, _quaternions)
@settings(max_examples=200, deadline=None)
def test_qmul_associativity(p, q, r):
    lhs = qmul(qmul(p, q), r)
    rhs = qmul(p, qmul(q, r))
    scale = max(1.0, p.norm() * q.norm() * r.norm())
    assert lhs.isclose(rhs, eps=1e-11 * scale)


@given(_quaternions, _quaternions)
@settings(max_examples=200, deadline=None)
def test_qmul_norm_multiplicative(p, q):
    scale = max(1.0, p.norm() * q.norm())
    assert abs(qmul(p, q).norm() - p.norm() * q.norm()) <= 1e-11 * scale


@given(_quaternions, _quaternions)
@settings(max_examples=200, deadline=None)
def test_conjugation_antihomomorphism(p, q):
    assert qmul(p, q).conj().isclose(qmul(q.conj(), p.conj()), eps=1e-11 * max(1.0, p.norm() * q.norm()))
