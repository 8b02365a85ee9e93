"""Regenerate the expected outputs of the CLI golden corpus.

Run after an intentional change to the output format, then review the diff
of tests/golden/ before committing.
"""

import io
import json
from pathlib import Path

from reeb_spectra.cli import run

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def main():
    manifest = json.loads((GOLDEN / "manifest.json").read_text())
    for entry in manifest:
        argv = list(entry["argv"])
        if "input" in entry:
            argv += ["--input", str(GOLDEN / entry["input"])]
        text, code, _ = run(argv, io.StringIO(""))
        entry["exit"] = code
        (GOLDEN / f"{entry['name']}.out.json").write_text(text)
        print(f"{code}  {entry['name']}")
    (GOLDEN / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


if __name__ == "__main__":
    main()
