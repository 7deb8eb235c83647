"""Command-line entry points.

healthdlt serve:            boot a topology plus the HTTP gateway
healthdlt loadtest run:     drive virtual users, write samples CSV
healthdlt loadtest report:  score samples, render text/CSV and figures

`loadtest` is also installed as its own command with the run/report
subcommands.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import canonical
from .errors import HealthDltError


def _add_loadtest_subcommands(subparsers) -> None:
    run = subparsers.add_parser("run", help="run a load test against a gateway")
    run.add_argument("--config", required=True, help="load config JSON file")
    run.add_argument("--out", required=True, help="samples CSV output path")
    run.add_argument("--probe", action="store_true", help="fail fast if target /health is unreachable")

    report = subparsers.add_parser("report", help="score a samples CSV")
    report.add_argument("--in", dest="infile", required=True, help="samples CSV input path")
    report.add_argument("--t", type=int, default=500, help="satisfied threshold, ms")
    report.add_argument("--f", type=int, default=1500, help="frustrated threshold, ms")
    report.add_argument("--format", choices=["text", "csv"], default="text")
    report.add_argument("--out", help="write the report here instead of stdout")
    report.add_argument(
        "--figures",
        help="directory for PNG figures (default: alongside --out when given)",
    )
    report.add_argument("--no-figures", action="store_true", help="skip figure rendering")


def _loadtest_run(args) -> int:
    from .loadtest import LoadConfig, run_load, write_samples_csv

    with open(args.config, "rb") as fh:
        config = LoadConfig.from_dict(canonical.decode(fh.read()))
    samples = run_load(config, probe=args.probe)
    write_samples_csv(samples, args.out)
    print(f"wrote {len(samples)} samples to {args.out}")
    return 0


def _loadtest_report(args) -> int:
    from .loadtest import apdex_score, read_samples_csv, render_figures, render_report

    samples = read_samples_csv(args.infile)
    report = apdex_score(samples, t_ms=args.t, f_ms=args.f)
    rendered = render_report(report, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(rendered)
        print(f"wrote report to {args.out}")
    else:
        print(rendered, end="")
    figures_dir = args.figures
    if figures_dir is None and args.out and not args.no_figures:
        figures_dir = os.path.dirname(os.path.abspath(args.out)) or "."
    if figures_dir and not args.no_figures:
        for path in render_figures(report, figures_dir):
            print(f"wrote {path}")
    return 0


def _dispatch_loadtest(args) -> int:
    if args.loadtest_cmd == "run":
        return _loadtest_run(args)
    if args.loadtest_cmd == "report":
        return _loadtest_report(args)
    raise SystemExit(2)


def _serve(args) -> int:
    from .gateway import GatewayConfig, GatewayService, serve_api
    from .harness import load_topology, start
    from .identity import FileWallet, Wallet

    topology = load_topology(args.topology)
    data_dir = args.data_dir
    if data_dir:
        os.makedirs(data_dir, exist_ok=True)
    network = start(topology, data_dir=data_dir, time_base=int(time.time() * 1000))
    network.start_live()
    wallet = FileWallet(os.path.join(data_dir, "wallet")) if data_dir else Wallet()
    config = GatewayConfig(
        admin_password=args.admin_password,
        document_dir=os.path.join(data_dir, "documents") if data_dir else None,
    )
    service = GatewayService(network, wallet, config)
    if not any(wallet.get(f"admin@{org.name}") for org in topology.orgs):
        service.bootstrap_admins()
        print(f"enrolled default admins (password: {args.admin_password})")
    port = args.port if args.port is not None else topology.gateway_internal_port
    server = serve_api(service, host=args.host, port=port)
    print(f"gateway listening on {server.base_url} (channel {topology.channel!r})", flush=True)
    print("press Ctrl-C to stop", flush=True)

    import signal
    import threading

    halt = threading.Event()
    for sig in (signal.SIGINT, signal.SIGTERM):
        signal.signal(sig, lambda *_: halt.set())
    try:
        while not halt.is_set():
            time.sleep(0.2)
    finally:
        server.stop()
        network.stop_live()
        if data_dir:
            network.save_state_snapshots()
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="healthdlt", description=__doc__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    serve = sub.add_parser("serve", help="run the network and HTTP gateway")
    serve.add_argument("--topology", default="topology-paper", help="file path or bundled name")
    serve.add_argument("--data-dir", help="persist chains, wallet, and documents here")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, help="override the topology's gateway port")
    serve.add_argument("--admin-password", default="adminpw")

    loadtest = sub.add_parser("loadtest", help="load generation and APDEX reports")
    lt_sub = loadtest.add_subparsers(dest="loadtest_cmd", required=True)
    _add_loadtest_subcommands(lt_sub)

    args = parser.parse_args(argv)
    try:
        if args.cmd == "serve":
            return _serve(args)
        if args.cmd == "loadtest":
            return _dispatch_loadtest(args)
    except HealthDltError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 2


def loadtest_main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="loadtest", description="gateway load testing")
    sub = parser.add_subparsers(dest="loadtest_cmd", required=True)
    _add_loadtest_subcommands(sub)
    args = parser.parse_args(argv)
    try:
        return _dispatch_loadtest(args)
    except HealthDltError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
