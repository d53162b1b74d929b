import numpy as np
import pytest

from ldl import build_cue_matrix, comprehension_map, production_map, simulate_semantics
from ldl.synthetic import toy_lexicon

KOREAN_SAMPLE = """Hangul,Word,Lexeme,Honorifics,Tense,SpeechLevel,IllocutionaryForce
고릅니다,go_rUm_ni_da,gorUda,plain,present,for,dec
고릅니까,go_rUm_ni_kka,gorUda,plain,present,for,inq
고르십시오,go_rU_sip-_syo,gorUda,hon,present,for,imp
고릅시다,go_rUp-_si_da,gorUda,plain,present,for,pro
"""


@pytest.fixture
def korean_csv(tmp_path):
    path = tmp_path / "korean.csv"
    path.write_text(KOREAN_SAMPLE, encoding="utf-8")
    return path


class Toy:
    def __init__(self, seed=0, dims=None):
        self.ds = toy_lexicon()
        self.inv, self.cm = build_cue_matrix(self.ds, 2)
        self.S = simulate_semantics(self.ds, "Lexeme", ["Number"], dims=dims,
                                    n_cues=len(self.inv), seed=seed)
        self.F = comprehension_map(self.cm, self.S)
        self.G = production_map(self.S, self.cm)

    def col(self, name):
        return self.G.coefficients[:, self.inv.index(name)]


@pytest.fixture
def toy():
    return Toy(seed=0)


# one summary line per acceptance criterion
_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance.items():
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
