import pytest

import reosem

UNIVERSE = ["foo"]

CIRCUIT = """\
universe {"foo"}
l = lossysync(A, M)
f = fifo(M, B)
circuit = l * f
"""


def lossy_fifo():
    lossy_eps, lossy_ca = reosem.instantiate("lossysync", ["A", "M"], "l", UNIVERSE)
    fifo_eps, fifo_ca = reosem.instantiate("fifo", ["M", "B"], "f", UNIVERSE)
    return reosem.compose(lossy_eps, fifo_eps), reosem.compose(lossy_ca, fifo_ca)


def test_instantiate_exposes_both_models():
    eps, ca = reosem.instantiate("fifo", ["A", "B"], "f", UNIVERSE)
    assert eps.nodes == ["A", "B"]
    assert eps.indexes == ["FIFO-E(f)", "FIFO-F(f)"]
    assert eps.initial == "FIFO-E(f)"
    assert ca.states == eps.indexes
    assert ca.transition_count == 4


def test_composition_and_transform_agree():
    eps, ca = lossy_fifo()
    assert ca.transition_count == 7
    assert reosem.l_transform(eps) == ca
    assert reosem.inv_l_transform(ca) == eps


def test_check_bisim_returns_a_witness():
    eps, ca = lossy_fifo()
    verdict = reosem.check_bisim(ca, eps, universe=UNIVERSE)
    assert verdict["bisimilar"] is True
    assert verdict["culprit"] is None
    diagonal = {(q, q) for q in ca.states}
    assert diagonal <= {tuple(p) for p in verdict["witness"]}


def test_check_bisim_names_the_culprit():
    sync_eps, sync_ca = reosem.instantiate("sync", ["A", "B"], "s", UNIVERSE)
    lossy_eps, _ = reosem.instantiate("lossysync", ["A", "B"], "l", UNIVERSE)
    verdict = reosem.check_bisim(sync_ca, lossy_eps, universe=UNIVERSE)
    assert verdict["bisimilar"] is False
    assert verdict["culprit"] == ("Sync(s)", "LSync(l)")
    assert verdict["reason"]


def test_elaborate_circuit_matches_manual_composition():
    items, eps, ca = reosem.elaborate_circuit(CIRCUIT)
    manual_eps, manual_ca = lossy_fifo()
    assert items == UNIVERSE
    assert eps == manual_eps
    assert ca == manual_ca


def test_serialize_round_trip():
    eps, ca = lossy_fifo()
    text = reosem.serialize(eps, UNIVERSE)
    items, decoded = reosem.deserialize(text)
    assert items == UNIVERSE
    assert decoded == eps
    assert reosem.serialize(decoded, UNIVERSE) == text

    ca_text = reosem.serialize(ca, UNIVERSE)
    _, decoded_ca = reosem.deserialize(ca_text)
    assert decoded_ca == ca


def test_export_dot():
    _, ca = lossy_fifo()
    plain = reosem.export_dot(ca)
    tidy = reosem.export_dot(ca, simplify=True)
    assert plain.startswith("digraph")
    assert "true & true" in plain
    assert "true & true" not in tidy


def test_errors_surface_as_python_exceptions():
    with pytest.raises(reosem.ModelParseError):
        reosem.deserialize("not a model")
    with pytest.raises(reosem.ReosemError):
        reosem.instantiate("fifo", ["A"], "f", UNIVERSE)
    with pytest.raises(reosem.ResourceLimitError):
        eps, ca = reosem.instantiate("fifo", ["A", "B"], "f", ["bar", "foo"])
        reosem.check_bisim(ca, eps, universe=["bar", "foo"], max_assignments=1)
