from softbitop.finite_topology import FiniteTopology, generate_topology
from softbitop.plotting import _cover_edges, plot_topology


def test_cover_edges_of_a_chain():
    chain = generate_topology([0b001, 0b011], 3)
    assert sorted(_cover_edges(chain)) == [(1, 0), (2, 1)]


def test_discrete_and_indiscrete_have_no_edges():
    assert _cover_edges(FiniteTopology.discrete(3)) == []
    assert _cover_edges(FiniteTopology.indiscrete(3)) == []


def test_plot_writes_png(tmp_path):
    path = plot_topology(generate_topology([0b01], 2), ["x", "y"], str(tmp_path / "sub" / "s.png"))
    with open(path, "rb") as fh:
        assert fh.read(4) == b"\x89PNG"
