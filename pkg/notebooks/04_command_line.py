"""
Running the pipeline from the command line
==========================================

Every computation is also available through ``abspec <command>
<config.json>``, which writes a CSV and prints the derived quantities.
This script drives the CLI on the sample configurations in ``configs/``.
"""

# %%
import pathlib
import tempfile

from abspec.cli import main

root = pathlib.Path(__file__).resolve().parent.parent / "configs"
out = pathlib.Path(tempfile.mkdtemp())

for command in ("eigen", "spectrum", "converge", "coil", "design"):
    print(f"$ abspec {command} configs/{command}.json")
    code = main([command, str(root / f"{command}.json"), "--out", str(out / f"{command}.csv")])
    print(f"exit {code}; first rows:")
    print("".join((out / f"{command}.csv").read_text().splitlines(keepends=True)[:4]))

# %%
# Overrides change single fields without editing the file.
main(["converge", str(root / "converge.json"), "--set", "ratio=0.5",
      "--out", str(out / "converge-half.csv")])
