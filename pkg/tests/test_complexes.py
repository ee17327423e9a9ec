from itertools import combinations

import pytest

from cutcomplex.complexes import (
    CUT,
    TOTAL,
    ComplexError,
    ComplexSpec,
    FVector,
    cut,
    f_vector,
    f_vector_of_facets,
    face_masks,
    face_table,
    faces_of_dim,
    facets,
    is_face,
    total_cut,
)
from cutcomplex.graphs import (
    Graph,
    cartesian_product,
    complete,
    cycle,
    cycle_power,
    is_connected_on,
    members,
    path,
    vset,
)

from conftest import random_graph

# vertices 1..5 of the drawn example relabelled 0..4
EXAMPLE = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 2)])


def brute_faces(g: Graph, kind: str, k: int) -> set[int]:
    n = g.n
    faces = set()
    for s in range(1 << n):
        rest = [v for v in range(n) if not s >> v & 1]
        for c in combinations(rest, k):
            m = vset(c)
            if kind == TOTAL:
                ok = all(not g.adjacent(u, v) for u, v in combinations(c, 2))
            else:
                ok = not is_connected_on(g, m)
            if ok:
                faces.add(s)
                break
    return faces


def test_example_facets_and_fvector():
    spec = total_cut(EXAMPLE, 2)
    assert [members(f) for f in facets(spec)] == [[0, 1, 2], [0, 2, 4], [1, 2, 3], [1, 3, 4]]
    assert f_vector(spec).counts == (1, 5, 9, 4)
    assert is_face(spec, vset([0, 1, 2]))


def test_c4_membership():
    spec = total_cut(cycle(4), 2)
    assert is_face(spec, vset([0, 2]))
    assert is_face(spec, vset([1, 3]))
    assert not is_face(spec, vset([0, 1]))
    assert sorted(members(f) for f in facets(spec)) == [[0, 2], [1, 3]]
    assert face_masks(spec, 1) == [vset([0, 2]), vset([1, 3])]


def test_void_versus_empty():
    void = total_cut(complete(4), 2)
    assert void.is_void()
    assert not is_face(void, 0)
    assert f_vector(void) == FVector()
    assert list(faces_of_dim(void, -1)) == []
    # two isolated vertices: the independent pair leaves only the empty face
    empty_only = total_cut(Graph(2, (0, 0)), 2)
    assert f_vector(empty_only).counts == (1,)


@pytest.mark.parametrize("kind", [TOTAL, CUT])
@pytest.mark.parametrize("k", [2, 3, 4])
def test_membership_against_brute_force(rng, kind, k):
    for _ in range(12):
        g = random_graph(rng, 8)
        spec = ComplexSpec(g, kind, k)
        expected = brute_faces(g, kind, k)
        assert {s for s in range(1 << 8) if is_face(spec, s)} == expected
        table = face_table(spec)
        assert {s for s in range(1 << 8) if table[s]} == expected


def test_downward_closure_and_purity(rng):
    for _ in range(10):
        spec = cut(random_graph(rng, 9), 3)
        table = face_table(spec)
        for s in range(1 << 9):
            if table[s]:
                for v in members(s):
                    assert table[s ^ (1 << v)]
        for f in facets(spec):
            assert f.bit_count() == spec.n - spec.k


def test_faces_lex_order():
    spec = total_cut(cycle_power(9, 2), 2)
    for d in range(-1, spec.top_dim + 1):
        got = [members(s) for s in faces_of_dim(spec, d)]
        assert got == sorted(got)
        assert len(got) == f_vector(spec).f(d)


def test_total_two_equals_cut_two_on_families():
    graphs = [cycle_power(12, 3), cartesian_product(complete(3), path(4)),
              cartesian_product(complete(2), cycle(6))]
    for g in graphs:
        assert (face_table(total_cut(g, 2)) == face_table(cut(g, 2))).all()


def test_facet_list_fvector():
    spec = cut(cartesian_product(complete(3), path(3)), 3)
    assert f_vector_of_facets(facets(spec)) == f_vector(spec)
    assert f_vector_of_facets([]) == FVector()


def test_spec_validation():
    with pytest.raises(ComplexError):
        ComplexSpec(cycle(5), "other", 2)
    with pytest.raises(ComplexError):
        ComplexSpec(cycle(5), CUT, 1)
    assert ComplexSpec(cycle(5), TOTAL, 9).is_void()


def test_reduced_euler_sign():
    # single vertex complex {emptyset, {0}}: f_-1 = 1, f_0 = 1
    assert FVector((1, 1), void=False).reduced_euler() == -1 + 1
