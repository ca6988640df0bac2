from pathlib import Path

import pytest

from entailgen import load_lexicon, load_rules, load_taxonomy

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
DATA = Path(__file__).resolve().parent / "data"


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon(FIXTURES / "lexicon.tsv")


@pytest.fixture(scope="session")
def taxonomy():
    return load_taxonomy(FIXTURES / "taxonomy.tsv")


@pytest.fixture(scope="session")
def core_rules():
    return load_rules(FIXTURES / "rules" / "core.xml")


@pytest.fixture(scope="session")
def bench_rules():
    return load_rules(FIXTURES / "rules" / "bench.xml")


def listing(name: str) -> str:
    return (DATA / name).read_text(encoding="utf-8")


LISTING_FILES = [
    "price_question_instance.xml",
    "price_of_pattern.xml",
    "how_much_template.xml",
    "name_of_pattern.xml",
    "name_template.xml",
    "study_in_pattern.xml",
    "attend_template.xml",
    "mother_language_pattern.xml",
    "can_speak_template.xml",
]
