import math

import pytest

from statcore.cost_model import (
    ConfigError,
    TechParams,
    format_report,
    gate_delay,
    wafer_report,
    wafer_transistors,
    word_cost,
)


def test_paper_word_cost():
    assert word_cost(TechParams()) == 226


def test_word_cost_16_bits():
    assert word_cost(TechParams(address_bits=16)) == 2 + 16 * 4 + 16 * 3 == 114


def test_word_cost_is_linear():
    costs = {b: word_cost(TechParams(address_bits=b)) for b in (8, 16, 40)}
    assert costs[16] - costs[8] == 8 * 7
    assert costs[40] - costs[16] == 24 * 7


@pytest.mark.parametrize("field", ["address_bits", "wafer_radius", "transistor_area", "bus_distance"])
def test_non_positive_rejected(field):
    with pytest.raises(ConfigError):
        TechParams(**{field: 0})
    with pytest.raises(ConfigError):
        TechParams(**{field: -1})


def test_default_snapshot():
    r = wafer_report()
    assert r.transistors_per_word == 226
    assert 1.25e13 <= r.wafer_transistors <= 1.26e13
    assert r.word_capacity > 51 * 2**30
    assert r.address_space_bits == 35
    assert r.gate_delay_ns == 320
    assert r.feasible


def test_radius_10cm():
    # pi * (1e5 um)**2 / 0.01 um**2 = pi * 1e12
    r = wafer_report(TechParams(wafer_radius=10))
    assert r.wafer_transistors == 3_141_592_653_589
    assert r.word_capacity == 3_141_592_653_589 // 226 == 13_900_852_449
    assert r.address_space_bits == 33 == math.floor(math.log2(13_900_852_449))


def test_degenerate_wafer():
    area = math.pi * (20 * 10_000) ** 2
    p = TechParams(transistor_area=area)
    assert wafer_transistors(p) == 1
    r = wafer_report(p)
    assert r.word_capacity == 0 and not r.feasible
    assert "feasible" in format_report(r)


def test_gate_delay():
    assert gate_delay(TechParams()) == 320
    assert gate_delay(TechParams(bus_distance=10)) == 80
    assert gate_delay(TechParams(bus_distance=1e-9)) == pytest.approx(0, abs=1e-6)


@pytest.mark.parametrize("kw", [dict(wafer_radius=25), dict(transistor_area=0.005), dict(wafer_radius=21, transistor_area=0.009)])
def test_capacity_monotone(kw):
    assert wafer_report(TechParams(**kw)).word_capacity >= wafer_report().word_capacity


def test_from_config():
    p = TechParams.from_config("# override\naddress_bits = 16\nwafer_radius: 12.5  # cm\n")
    assert p.address_bits == 16 and p.wafer_radius == 12.5
    assert p.transistor_area == 0.01


@pytest.mark.parametrize(
    "text", ["wafer_radius = -3", "colour = blue", "address_bits = 3.5", "address_bits"]
)
def test_from_config_errors(text):
    with pytest.raises(ConfigError):
        TechParams.from_config(text)


def test_report_text_and_dict():
    r = wafer_report()
    text = format_report(r)
    assert "226" in text and "35" in text and "320 ns" in text and "GW" in text
    d = r.as_dict()
    assert d["word_capacity_gw"] > 51 and d["feasible"]
