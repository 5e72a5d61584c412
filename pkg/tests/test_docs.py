import glob
import re
from pathlib import Path

import pytest

from wsaic.harness import load_config

ROOT = Path(__file__).resolve().parent.parent
PATTERN = re.compile(r"configs/[\w./<>*-]+?\.toml")


def referenced_configs():
    text = (ROOT / "REPRODUCING.md").read_text()
    refs = sorted(set(PATTERN.findall(text)))
    assert refs, "no config references found"
    return refs


@pytest.mark.parametrize("ref", referenced_configs())
def test_referenced_configs_parse_and_validate(ref):
    pattern = re.sub(r"<[^>]+>", "*", ref)
    files = sorted(glob.glob(str(ROOT / pattern)))
    assert files, f"{ref} matches no file"
    for path in files:
        cfg = load_config(path)
        cfg.validate()


def test_every_config_is_documented():
    patterns = [re.sub(r"<[^>]+>", "*", r) for r in referenced_configs()]
    covered = {p for pat in patterns for p in glob.glob(str(ROOT / pat))}
    every = set(glob.glob(str(ROOT / "configs" / "**" / "*.toml"), recursive=True))
    assert every and every <= covered
