"""File paths for bundled schemas."""

from pathlib import Path

# Anchor all paths to the package.
_PACKAGE_ROOT = Path(__file__).resolve().parent.parent

SCHEMA_DIR = _PACKAGE_ROOT / "schemas"
LATTICE_DOCUMENT_SCHEMA_PATH = SCHEMA_DIR / "lattice_document.schema.json"
ANALYSIS_REPORT_SCHEMA_PATH = SCHEMA_DIR / "analysis_report.schema.json"

