import itertools

import pytest
from hypothesis import given, strategies as st

import oracles
from strategies import soft_groups
from softbitop.core_sets import SoftSet, bits
from softbitop.errors import AxiomViolation, ShapeError, UnknownLabel
from softbitop.finite_group import (
    SEGroup,
    SoftGroup,
    cyclic_group,
    dihedral_group,
    is_se_homomorphism,
    is_soft_group,
    klein_four,
    labels_to_index_map,
    make_group,
    parameterwise_hom,
    product_group,
    se_group_op,
    soft_subgroups,
    translation_map,
)
from softbitop.finite_topology import CarrierMap

Z3_TABLE = [["0", "1", "2"], ["1", "2", "0"], ["2", "0", "1"]]


def test_make_group_from_labels():
    G = make_group(["0", "1", "2"], Z3_TABLE, "0")
    assert G.order == 3
    assert G.inverses == (0, 2, 1)
    assert G.mul(1, 2) == 0


@pytest.mark.parametrize("table,identity,axiom", [
    ([["0", "1"], ["1", "1"]], "0", "latin"),
    ([["1", "0"], ["0", "1"]], "0", "identity"),
    ([["0", "1", "2"], ["1", "0", "0"], ["2", "0", "0"]], "0", "associativity"),
])
def test_make_group_names_failing_axiom(table, identity, axiom):
    labels = [str(i) for i in range(len(table))]
    with pytest.raises(AxiomViolation) as exc:
        make_group(labels, table, identity)
    assert exc.value.witness["axiom"] == axiom


def test_make_group_shape_and_labels():
    with pytest.raises(ShapeError):
        make_group(["0", "1"], [["0"]], "0")
    with pytest.raises(UnknownLabel):
        make_group(["0", "1"], [["0", "x"], ["1", "0"]], "0")


@pytest.mark.parametrize("G", [cyclic_group(1), cyclic_group(5), klein_four(), dihedral_group(3),
                               dihedral_group(4), product_group(cyclic_group(2), cyclic_group(3))],
                         ids=["Z1", "Z5", "V4", "D6", "D8", "Z2xZ3"])
def test_builtin_groups_pass_oracle(G):
    assert oracles.group_ok([list(r) for r in G.table], G.identity)


def test_dihedral_relation():
    D = dihedral_group(4)
    r, s = D.index("r"), D.index("s")
    assert D.mul(D.mul(s, r), s) == D.inv(r)
    assert D.mul(s, r) == D.index("sr")


def test_subgroups_of_d8():
    D = dihedral_group(4)
    subs = D.subgroups()
    assert len(subs) == 10
    normal = [H for H in subs if D.is_normal(H)]
    assert len(normal) == 6


def test_soft_group_rejects_non_subgroup_section():
    G = cyclic_group(4)
    F = SoftSet(G.universe, ("t",), (0b0011,))
    v = is_soft_group(F, G)
    assert not v and v.witness == {"parameter": "t", "reason": "not closed under inverses"}
    assert is_soft_group(SoftSet(G.universe, ("t",), (0b0010,)), G).witness["reason"] == "missing identity"
    with pytest.raises(AxiomViolation):
        SoftGroup(G, F)


@given(soft_groups())
def test_se_group_is_a_group_and_coordinatewise(gf):
    G, F = gf
    S = SEGroup(SoftGroup(G, F))
    table = [[S.mul(a, b) for b in range(S.order)] for a in range(S.order)]
    assert oracles.group_ok(table, S.identity)
    se = oracles.soft_elements(F.sections)
    for i, a in enumerate(se):
        for j, b in enumerate(se):
            assert se[table[i][j]] == tuple(G.mul(x, y) for x, y in zip(a, b))
    assert se[S.identity] == (G.identity,) * len(F.params)


@given(soft_groups(), st.data())
def test_translations_are_bijections_with_expected_inverse(gf, data):
    G, F = gf
    S = SEGroup(SoftGroup(G, F))
    a = data.draw(st.integers(0, S.order - 1))
    for side in ("left", "right"):
        f = translation_map(S, a, side)
        g = translation_map(S, S.inv(a), side)
        assert f.is_bijective()
        assert f.compose(g).table == CarrierMap.identity(S.order).table
    inv = translation_map(S, 0, "inversion")
    assert inv.compose(inv).table == CarrierMap.identity(S.order).table


def test_se_group_op_errors():
    G = cyclic_group(2)
    F = SoftGroup(G, SoftSet(G.universe, ("t",), (3,)))
    assert se_group_op("mul", F, 1, 1) == 0
    assert se_group_op("identity", F) == 0
    with pytest.raises(IndexError):
        se_group_op("inv", F, 2)
    with pytest.raises(ValueError):
        se_group_op("pow", F, 1)


def test_parameterwise_hom_z4_to_z2():
    Z4, Z2 = cyclic_group(4), cyclic_group(2)
    F = SoftGroup(Z4, SoftSet(Z4.universe, ("t1", "t2"), (0b1111, 0b0101)))
    H = SoftGroup(Z2, SoftSet(Z2.universe, ("t1", "t2"), (0b11, 0b11)))
    mod2 = {x: x % 2 for x in range(4)}
    res = parameterwise_hom([mod2, mod2], F, H)
    assert res.is_hom and res.kernel_normal and res.image_subgroup
    assert len(res.kernel) == 4
    assert len(res.image) == 2
    assert is_se_homomorphism(res.map, SEGroup(F), SEGroup(H))
    bad = parameterwise_hom([{x: min(x, 1) for x in range(4)}, mod2], F, H)
    assert not bad.is_hom
    assert not is_se_homomorphism(bad.map, SEGroup(F), SEGroup(H))


def test_parameterwise_hom_rejects_bad_maps():
    Z2 = cyclic_group(2)
    F = SoftGroup(Z2, SoftSet(Z2.universe, ("t",), (3,)))
    H = SoftGroup(Z2, SoftSet(Z2.universe, ("t",), (1,)))
    with pytest.raises(ShapeError):
        parameterwise_hom([{0: 0, 1: 1}], F, H)
    with pytest.raises(ShapeError):
        parameterwise_hom([{0: 0}], F, F)


def test_labels_to_index_map():
    D = dihedral_group(4)
    assert labels_to_index_map(D, {"r": "r3"}) == {1: 3}


@given(soft_groups(max_params=2))
def test_soft_subgroups_are_all_subgroup_sections(gf):
    G, F = gf
    subs = soft_subgroups(SoftGroup(G, F))
    expected = []
    for secs in itertools.product(*[range(s + 1) for s in F.sections]):
        if all(m & ~s == 0 and m in G.subgroups() for m, s in zip(secs, F.sections)):
            expected.append(secs)
    assert [H.sections for H in subs] == sorted(expected)
    for H in subs:
        assert all(set(bits(h)) <= set(bits(s)) for h, s in zip(H.sections, F.sections))
