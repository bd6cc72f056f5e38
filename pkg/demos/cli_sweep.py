"""Running scenarios and sweeps through the command-line layer.

Writes a config, runs the spectrum scenario over three cross-damping values
and prints the summaries. The same run from a shell is

    qdint spectrum --config cfg.json --sweep gamma12=0,0.999,1 --out spec.csv --plot
"""
import json
import tempfile
from pathlib import Path

from qdint import cli

cfg = cli.ScenarioConfig("spectrum", {"omega": 5.0, "delta": 5.0, "gamma12": 0.0})
for r in cli.sweep(cfg, "gamma12", [0.0, 0.999, 1.0]):
    s = r.summary
    print(f"G12 = {r.config.parameters['gamma12']}: {s['peak_count']} peaks, integrated {s['total_integrated']:.3g}")

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "cfg.json"
    path.write_text(cli.emit_config(cli.ScenarioConfig("cpt", {"gamma2": 0.02, "delta12": 0.1})))
    out = Path(tmp) / "cpt.csv"
    rc = cli.main(["cpt", "--config", str(path), "--out", str(out), "--plot"])
    summary = json.loads(out.read_text().splitlines()[2].removeprefix("# summary "))
    print(f"\ncpt exit code {rc}: predicted zero {summary['predicted_zero']:.5f}, "
          f"found {summary['zero_crossing']:.5f}")
    print("files written:", sorted(p.name for p in Path(tmp).iterdir()))
