"""Command line: initialize a corpus root and serve the API."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from slakit.service.config import Settings


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="slakit")
    sub = parser.add_subparsers(dest="command", required=True)

    init = sub.add_parser("init", help="create an empty corpus root")
    init.add_argument("--root", required=True, type=Path)
    init.add_argument(
        "--with-starter-network",
        action="store_true",
        help="also create the decision/action/issue starter network",
    )

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--root", required=True, type=Path)
    serve.add_argument("--host", default=Settings.host)
    serve.add_argument("--port", type=int, default=Settings.port)
    serve.add_argument("--session-timeout", type=float, default=Settings.session_timeout_s)
    serve.add_argument("--enumeration-bound", type=int, default=Settings.enumeration_bound)
    serve.add_argument("--base-bucket", type=int, default=Settings.base_bucket)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "init":
        from slakit.networks import decision_moves_systems
        from slakit.store import CorpusStore

        store = CorpusStore.init(args.root)
        if args.with_starter_network:
            network = store.create_network(
                "decision moves", decision_moves_systems(), network_id="decision-moves"
            )
            print(f"created starter network {network.network_id}")
        print(f"initialized corpus at {store.root}")
        return 0

    if args.command == "serve":
        import uvicorn

        from slakit.service.app import create_app

        settings = Settings(
            store_root=args.root,
            host=args.host,
            port=args.port,
            session_timeout_s=args.session_timeout,
            enumeration_bound=args.enumeration_bound,
            base_bucket=args.base_bucket,
        )
        uvicorn.run(create_app(settings), host=settings.host, port=settings.port, log_level="warning")
        return 0

    return 2


if __name__ == "__main__":
    sys.exit(main())
