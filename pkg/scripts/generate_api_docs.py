#!/usr/bin/env python3
"""Write the OpenAPI reference for the HTTP service into docs/.

Usage: python scripts/generate_api_docs.py [output-dir]
"""

from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

from seminar.api import create_app
from seminar.config import AppConfig


def main() -> int:
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("docs")
    out_dir.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as scratch:
        app = create_app(AppConfig(
            db_url=":memory:",
            files_dir=f"{scratch}/files",
            static_dir=f"{scratch}/no-static",
        ))
        spec = app.openapi()
    target = out_dir / "openapi.json"
    target.write_text(json.dumps(spec, indent=2, sort_keys=True) + "\n")
    print(f"wrote {target} ({len(spec.get('paths', {}))} paths)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
