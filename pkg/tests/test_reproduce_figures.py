import csv

from scripts.reproduce_figures import reproduce


def test_writes_every_dataset(tmp_path, capsys):
    box = reproduce(tmp_path, steps=21, workers=1)
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["criteria.csv", "eof_surface.csv", "eof_vs_half_mi.csv", "scan_r0.5.csv", "scan_r1.csv"]

    with open(tmp_path / "scan_r1.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 200
    assert float(rows[0]["eof"]) == 0.0

    assert box is not None and box.count >= 1
    assert "EOF > I_M/2" in capsys.readouterr().out
