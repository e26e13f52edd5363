import os
import shutil

import pytest

from tptp2miz import cli

from conftest import FIXTURES


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestDerivationMode:
    def test_writes_article_and_manifest(self, tmp_path, capsys):
        code, _, err = run(
            capsys,
            "derivation",
            os.path.join(FIXTURES, "puz001+1.out"),
            "-o",
            str(tmp_path),
        )
        assert code == 0
        miz = (tmp_path / "puz001+1.miz").read_text()
        env = (tmp_path / "puz001+1.env").read_text()
        assert "hence thesis;" in miz
        assert "skolemdef 2:" in env
        assert "compression:" in err  # report goes to stderr, not the files
        assert "compression" not in miz

    def test_no_compress_superset(self, tmp_path, capsys):
        code, _, _ = run(
            capsys,
            "derivation",
            os.path.join(FIXTURES, "puz001+1.out"),
            "-o",
            str(tmp_path / "full"),
            "--no-compress",
        )
        assert code == 0
        code, _, _ = run(
            capsys,
            "derivation",
            os.path.join(FIXTURES, "puz001+1.out"),
            "-o",
            str(tmp_path / "small"),
        )
        assert code == 0
        full = (tmp_path / "full" / "puz001+1.miz").read_text()
        small = (tmp_path / "small" / "puz001+1.miz").read_text()
        def statements(text):
            out = set()
            for line in text.splitlines():
                if line.startswith("S") and ":" in line:
                    out.add(line.split(":", 1)[1].split(" by ")[0].rstrip(";"))
            return out

        # justifications change under compression, formulas must not
        assert statements(small) <= statements(full)

    def test_byte_identical_runs(self, tmp_path, capsys):
        for sub in ("one", "two"):
            run(
                capsys,
                "derivation",
                os.path.join(FIXTURES, "puz001+1.out"),
                "-o",
                str(tmp_path / sub),
            )
        assert (tmp_path / "one" / "puz001+1.miz").read_bytes() == (
            tmp_path / "two" / "puz001+1.miz"
        ).read_bytes()
        assert (tmp_path / "one" / "puz001+1.env").read_bytes() == (
            tmp_path / "two" / "puz001+1.env"
        ).read_bytes()

    def test_missing_input(self, capsys):
        code, _, err = run(capsys, "derivation", "/no/such/file.out")
        assert code == 2
        assert err.startswith("error: IoError:")


class TestProblemMode:
    def test_flat_article(self, tmp_path, capsys):
        code, _, _ = run(
            capsys,
            "problem",
            os.path.join(FIXTURES, "puz001+1.p"),
            "-o",
            str(tmp_path),
        )
        assert code == 0
        miz = (tmp_path / "puz001+1.miz").read_text()
        assert "::> pending proof" in miz
        assert "proof" not in miz.replace("::> pending proof", "")

    def test_syntax_error_reported(self, tmp_path, capsys):
        bad = tmp_path / "bad.p"
        bad.write_text("fof(a, axiom, p(c)")
        code, _, err = run(capsys, "problem", str(bad))
        assert code == 2
        assert err.startswith("error: TptpSyntaxError:")
        assert "line 1" in err


class TestCheckObviousMode:
    def write(self, tmp_path, text):
        path = tmp_path / "query.p"
        path.write_text(text)
        return str(path)

    def test_obvious_exit_zero(self, tmp_path, capsys):
        path = self.write(
            tmp_path,
            "fof(p1, axiom, ![X]: (p(X) => q(X))).\n"
            "fof(p2, axiom, p(c)).\n"
            "fof(c1, conjecture, q(c)).\n",
        )
        code, out, _ = run(capsys, "check-obvious", path)
        assert code == 0
        assert out.strip() == "Obvious"

    def test_not_obvious_exit_one(self, tmp_path, capsys):
        path = self.write(
            tmp_path,
            "fof(p1, axiom, p(c)).\nfof(c1, conjecture, q(c)).\n",
        )
        code, out, _ = run(capsys, "check-obvious", path)
        assert code == 1
        assert out.strip() == "NotObvious"

    def test_unknown_exit_three(self, tmp_path, capsys):
        path = self.write(
            tmp_path,
            "fof(p1, axiom, ![X]: (p(X) => q(X))).\n"
            "fof(p2, axiom, p(c)).\n"
            "fof(c1, conjecture, q(c)).\n",
        )
        code, out, _ = run(capsys, "check-obvious", path, "--budget", "1")
        assert code == 3
        assert out.strip() == "Unknown"
