"""Regenerate the TOML files under configs/ from the function table."""

from pathlib import Path

from wsaic.algorithms import ALGORITHMS
from wsaic.functions import SUITE

ROOT = Path(__file__).resolve().parent.parent / "configs"
TS_FACTORS = range(20, 201, 20)


def write(path: Path, lines: list[str]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n")


def main() -> None:
    for preset in ("desk", "paper"):
        for fid in SUITE:
            for algo in ALGORITHMS:
                name = f"{fid.lower()}-{algo}"
                write(ROOT / preset / f"{name}.toml", [
                    f'function = "{fid}"',
                    f'preset = "{preset}"',
                    "base_seed = 0",
                    f'output = "../../results/{preset}/{algo}/{fid}"',
                    "",
                    "[algorithm]",
                    f'name = "{algo}"',
                ])
    for fid, entry in SUITE.items():
        for k in TS_FACTORS:
            write(ROOT / "ts-sweep" / f"{fid.lower()}-ts{k}n.toml", [
                f'function = "{fid}"',
                'preset = "desk"',
                "base_seed = 0",
                f'output = "../../results/ts-sweep/ts{k}n/{fid}"',
                "",
                "[algorithm]",
                'name = "wsa-ic"',
                "",
                "[algorithm.params]",
                f"stability_threshold = {k * entry.dimension}",
            ])


if __name__ == "__main__":
    main()
