"""
Batch jobs from the command line
================================

Job files are plain ``key: value`` records; the same reports are produced
by ``frobroot <cmd> FILE``.
"""

from pathlib import Path

from frobroot.cli import load_jobspec, render_text, run_command

here = Path(__file__).parent / "jobs"

for name, cmd, kw in [
    ("cusp.job", "ie", {"e": 1}),
    ("fermat2.job", "localhsl", {"prime": "x,y,z"}),
    ("quartic.job", "stratify", {}),
    ("semigroup.job", "finjective", {}),
]:
    report, code = run_command(cmd, load_jobspec(str(here / name)), **kw)
    print(f"$ frobroot {cmd} {name}    (exit {code})")
    print(render_text(report))
