"""Run the HTTP API, optionally serving the built explorer UI.

Configuration comes from the environment (APS_DB, APS_ADMIN_KEY,
APS_ADMIN_SECRET); --db overrides the database path. When
frontend/dist/ exists its static bundle is mounted at /, so the UI and
the API it calls share one origin.

Usage: python3 scripts/serve.py [--db aps.sqlite3] [--host 127.0.0.1] [--port 8000]
"""

import argparse
import sys
from pathlib import Path

import uvicorn
from fastapi.staticfiles import StaticFiles

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from perfspace.config import Config
from perfspace.service import create_app
from perfspace.storage import Store


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--db", default=None, help="sqlite database path")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    args = parser.parse_args()

    config = Config() if args.db is None else Config(db_path=args.db)
    store = Store(config.db_path)
    app = create_app(store, config)

    dist = ROOT / "frontend" / "dist"
    if dist.is_dir():
        app.mount("/", StaticFiles(directory=dist, html=True), name="ui")
        print(f"serving UI bundle from {dist}")
    else:
        print("no frontend/dist bundle; serving API only")

    print(f"database: {config.db_path}")
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    sys.exit(main())
