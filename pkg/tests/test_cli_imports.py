"""Tests for qpsse.cli.imports.load_symbol."""

import sys
from pathlib import Path

import pytest

from qpsse.cli.errors import CliError
from qpsse.cli.imports import load_symbol


def test_load_symbol_inserts_cwd_on_syspath(monkeypatch, tmp_path: Path) -> None:
    (tmp_path / "demo_tracer.py").write_text("VALUE = 1\n")

    monkeypatch.chdir(tmp_path)
    monkeypatch.setattr(sys, "path", [str(tmp_path.parent)])
    sys.modules.pop("demo_tracer", None)

    assert load_symbol("demo_tracer:VALUE", label="tracer") == 1
    assert str(tmp_path) in sys.path


@pytest.mark.parametrize("spec", ["nocolon", ":attr", "module:"])
def test_load_symbol_rejects_malformed_spec(spec: str) -> None:
    with pytest.raises(CliError, match="Use 'module:callable'"):
        load_symbol(spec, label="tracer")


def test_load_symbol_rejects_empty_dotted_segment() -> None:
    with pytest.raises(CliError, match="empty segments"):
        load_symbol("demo:pkg..value", label="tracer")


def test_load_symbol_reports_missing_attribute(monkeypatch, tmp_path: Path) -> None:
    (tmp_path / "attr_demo.py").write_text("pkg = object()\n")

    monkeypatch.chdir(tmp_path)
    monkeypatch.setattr(sys, "path", [str(tmp_path)])
    sys.modules.pop("attr_demo", None)

    with pytest.raises(CliError, match="has no attribute 'missing'"):
        load_symbol("attr_demo:pkg.missing", label="tracer")


def test_load_symbol_missing_module_hints_cwd(monkeypatch, tmp_path: Path) -> None:
    monkeypatch.chdir(tmp_path)
    monkeypatch.setattr(sys, "path", [str(tmp_path)])

    with pytest.raises(CliError, match="run qpsse from the directory"):
        load_symbol("no_such_tracer_module:make", label="tracer")
