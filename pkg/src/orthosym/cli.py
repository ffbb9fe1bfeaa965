"""Command-line front end.

A thin client: every command builds the service's request payload and POSTs
it, either to an in-process instance of the app (the default, so the CLI
works offline and deterministically) or to a remote server given by
``--server`` / the ORTHOSYM_SERVER environment variable.

Exit codes: 0 success, 1 input error (or verification/expectation failures),
2 classification trichotomy violation.
"""

from __future__ import annotations

import json
import sys

import click
import httpx

from .reports import canonical_json
from .service.app import TRICHOTOMY_ERROR_CODE, create_app


def _client(server: str | None):
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    import warnings

    with warnings.catch_warnings():
        # some starlette builds warn at import about their httpx backend
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    return TestClient(create_app())


def _post(server: str | None, path: str, payload: dict) -> dict:
    with _client(server) as client:
        response = client.post(path, json=payload)
    body = response.json()
    if response.status_code >= 400:
        if isinstance(body, dict) and body.get("code") == TRICHOTOMY_ERROR_CODE:
            click.echo(f"trichotomy violation: {body.get('detail')}", err=True)
            sys.exit(2)
        detail = body.get("detail", body) if isinstance(body, dict) else body
        click.echo(f"error: {detail}", err=True)
        sys.exit(1)
    return body


def _parse_ranges(text: str | None) -> dict[str, str]:
    if not text:
        return {}
    out = {}
    for piece in text.split(","):
        key, sep, value = piece.partition("=")
        if not sep or not key.strip():
            raise click.BadParameter(f"expected k=v or k=lo..hi, got {piece!r}")
        out[key.strip()] = value.strip()
    return out


_SERVER_OPTION = click.option(
    "--server", envvar="ORTHOSYM_SERVER", default=None, help="Remote service URL (default: in-process)."
)
_JSON_OPTION = click.option("--json", "as_json", is_flag=True, help="Emit the canonical JSON report.")


@click.group()
def main():
    """Classify finite subgroups of O(4) given as quaternion pairs."""


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--max-order", type=int, default=None, help="Override the closure size bound.")
@_JSON_OPTION
@_SERVER_OPTION
def classify(path, max_order, as_json, server):
    """Classify the group described by a JSON file with fields
    'name', 'generators' (element strings), and optional 'max_order'."""
    try:
        with open(path, encoding="utf-8") as handle:
            doc = json.load(handle)
        generators = list(doc["generators"])
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        click.echo(f"error: cannot read group file {path}: {exc}", err=True)
        sys.exit(1)
    payload = {
        "name": doc.get("name", "group"),
        "generators": generators,
        "max_order": max_order if max_order is not None else doc.get("max_order"),
    }
    report = _post(server, "/classify", payload)
    if as_json:
        click.echo(canonical_json(report), nl=False)
        return
    c = report["classification"]
    click.echo(f"name:  {report['name']}")
    click.echo(f"order: {report['group_order']}")
    click.echo(f"case:  {c['case']}")
    if c["line"] is not None:
        click.echo(f"invariant line: {c['line']}")
    if c["chiral_element"] is not None:
        click.echo(f"chiral element: {c['chiral_element']}")
    if c["conjugator"] is not None:
        click.echo(f"conjugator: {c['conjugator']}")
    if c["note"]:
        click.echo(f"note: {c['note']}")
    chiral_count = sum(1 for row in report["elements"] if not row["has_invariant_line"])
    click.echo(f"elements without an invariant line: {chiral_count}/{report['group_order']}")


@main.command()
@click.option("--family", required=True, help="Catalog family name.")
@click.option("--range", "range_text", default=None, help="Parameter ranges, e.g. m=1..4,n=2,s=auto.")
@click.option("--params", "params_text", default=None, help="Alias for --range with single values.")
@click.option("--expect-paper", is_flag=True, help="Diff each verdict against the cataloged expectation.")
@_JSON_OPTION
@_SERVER_OPTION
def sweep(family, range_text, params_text, expect_paper, as_json, server):
    """Classify every parameter tuple of a catalog family."""
    ranges = _parse_ranges(range_text)
    ranges.update(_parse_ranges(params_text))
    payload = {"family": family, "ranges": ranges, "expect_paper": expect_paper}
    body = _post(server, "/sweep", payload)
    if as_json:
        click.echo(canonical_json(body), nl=False)
    else:
        for item in body["reports"]:
            report = item["report"]
            line = f"{report['name']}: {report['classification']['case']} (order {report['group_order']})"
            if item["expected"] is not None:
                line += f" expected {item['expected']}" + ("" if item["match"] else "  <-- MISMATCH")
            click.echo(line)
        summary = body["summary"]
        click.echo(f"total: {summary['total']}  counts: {summary['counts']}")
        if expect_paper:
            click.echo(f"mismatches: {len(summary['mismatches'])}")
    if expect_paper and body["summary"]["mismatches"]:
        sys.exit(1)


@main.command()
@click.argument("element")
@_JSON_OPTION
@_SERVER_OPTION
def invariant(element, as_json, server):
    """Chirality data of one element string, e.g. '[w,1]' or
    '[(0,1,0,0), (cospi(1/3), sinpi(1/3), 0, 0)]'."""
    body = _post(server, "/invariant", {"element": element})
    if as_json:
        click.echo(canonical_json(body), nl=False)
        return
    click.echo(f"element:   {body['canonical']}")
    click.echo(f"order m:   {body['m']}")
    click.echo(f"residues:  a1={body['a1']}, a2={body['a2']}")
    click.echo(f"isoclinic: {body['isoclinic']}")
    click.echo(f"lk sign:   {body['lk_sign']}  (class {body['lk_class']} mod {body['m']})")


@main.command("verify-paper")
@click.option("--only", default=None, help="Run a single named claim.")
@_JSON_OPTION
@_SERVER_OPTION
def verify_paper(only, as_json, server):
    """Run the named verification claims; exit 0 iff all pass."""
    body = _post(server, "/verify-paper", {"only": only})
    if as_json:
        click.echo(canonical_json(body), nl=False)
    else:
        for claim in body["claims"]:
            click.echo(f"{'PASS' if claim['passed'] else 'FAIL'} {claim['name']}: {claim['detail']}")
    sys.exit(0 if body["all_passed"] else 1)


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8000, type=int)
def serve(host, port):
    """Run the classification service."""
    import uvicorn

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
