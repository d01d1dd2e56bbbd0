"""Command-line front door.

Global settings (--ontology, --library, --seed) resolve with the precedence
flags > SCHEMAKIT_* environment variables > --config JSON file > defaults.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from ..ontology import load_ontology
from ..schema_model import deserialize, validate_schema
from . import pipelines
from .store import LibraryStore


class Settings:
    def __init__(self, flags: dict, config_path: str | None):
        self.flags = {k: v for k, v in flags.items() if v is not None}
        self.file = {}
        if config_path:
            self.file = json.loads(Path(config_path).read_text(encoding="utf-8"))

    def get(self, name: str, default=None, cast=None):
        """flags > env > config file > default."""
        if name in self.flags:
            value = self.flags[name]
        else:
            env = os.environ.get(f"SCHEMAKIT_{name.upper()}")
            if env is not None:
                value = env
            elif name in self.file:
                value = self.file[name]
            else:
                return default
        return cast(value) if cast is not None else value

    def require(self, name: str, cast=None):
        value = self.get(name, cast=cast)
        if value is None:
            raise click.UsageError(
                f"--{name} is required (or set SCHEMAKIT_{name.upper()}, "
                f"or put {name!r} in the --config file)")
        return value


pass_settings = click.make_pass_decorator(Settings)


@click.group()
@click.option("--ontology", "ontology_path", type=click.Path(), default=None,
              help="Ontology document (JSON).")
@click.option("--library", "library_path", type=click.Path(), default=None,
              help="Schema library store directory.")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help="JSON config file with default settings.")
@click.option("--seed", type=int, default=None, help="Global random seed.")
@click.pass_context
def main(ctx, ontology_path, library_path, config_path, seed):
    """Induce, edit, and evaluate event schema libraries."""
    ctx.obj = Settings(
        {"ontology": ontology_path, "library": library_path, "seed": seed},
        config_path,
    )


def _ontology(settings: Settings):
    path = settings.require("ontology")
    return load_ontology(Path(path).read_bytes())


def _library_schemas(settings: Settings):
    path = settings.require("library")
    return LibraryStore(path).all_schemas()


@main.command("extract-transactions")
@click.option("--corpus", required=True, type=click.Path(exists=True))
@click.option("--mapping", type=click.Path(exists=True), default=None)
@click.option("--out", required=True, type=click.Path())
@pass_settings
def extract_transactions(settings, corpus, mapping, out):
    """Build co-referring-argument transactions from a document corpus."""
    summary = pipelines.run_extract_transactions(corpus, _ontology(settings), out, mapping)
    click.echo(json.dumps(summary))


@main.command()
@click.option("--transactions", required=True, type=click.Path(exists=True))
@click.option("--min-support", type=int, default=10, show_default=True)
@click.option("--min-items", type=int, default=2, show_default=True)
@click.option("--max-items", type=int, default=10, show_default=True)
@click.option("--out", required=True, type=click.Path())
@pass_settings
def mine(settings, transactions, min_support, min_items, max_items, out):
    """Mine frequent event itemsets with FP-growth."""
    summary = pipelines.run_mine(transactions, out, min_support, min_items, max_items)
    click.echo(json.dumps(summary))


@main.command("build-skeletons")
@click.option("--itemsets", required=True, type=click.Path(exists=True))
@click.option("--transactions", type=click.Path(exists=True), default=None,
              help="Needed when --scorer pmi.")
@click.option("--scorer", default="pmi", show_default=True,
              help="pmi or table:<path>.")
@click.option("--top-sequences", type=int, default=100_000, show_default=True)
@click.option("--reuse-cap", type=int, default=50, show_default=True)
@click.option("--top-chains", type=int, default=1_000, show_default=True)
@click.option("--out-dir", required=True, type=click.Path())
@pass_settings
def build_skeletons(settings, itemsets, transactions, scorer, top_sequences,
                    reuse_cap, top_chains, out_dir):
    """Score, diversify, and join itemsets into ranked skeleton schemas."""
    summary = pipelines.run_build_skeletons(
        itemsets, out_dir, _ontology(settings), scorer_spec=scorer,
        transactions_path=transactions, top_sequences=top_sequences,
        reuse_cap=reuse_cap, top_chains=top_chains)
    click.echo(json.dumps(summary))


@main.command()
@click.option("--schema", "schema_path", type=click.Path(exists=True), default=None,
              help="Validate one schema document; defaults to the whole library.")
@pass_settings
def validate(settings, schema_path):
    """Type-check schemas against the ontology; exit 1 on errors."""
    ontology = _ontology(settings)
    if schema_path:
        targets = [deserialize(Path(schema_path).read_bytes())]
    else:
        targets = _library_schemas(settings)
    failed = False
    for schema in targets:
        report = validate_schema(schema, ontology)
        status = "ok" if report.ok else "INVALID"
        click.echo(f"{schema.id}: {status} "
                   f"({len(report.errors)} errors, {len(report.warnings)} warnings)")
        for issue in report.issues:
            click.echo(f"  [{issue.severity}] {issue.location}: {issue.message}")
        failed = failed or not report.ok
    if failed:
        sys.exit(1)


@main.command()
@click.option("--corpus", required=True, type=click.Path(exists=True))
@click.option("--mapping", type=click.Path(exists=True), default=None)
@click.option("--thresholds", default="0.5,0.7,0.9", show_default=True)
@click.option("--strata", default="1:5,5:10,10:", show_default=True)
@click.option("--out", type=click.Path(), default=None)
@pass_settings
def coverage(settings, corpus, mapping, thresholds, strata, out):
    """Corpus coverage Cov@t of the library, stratified by document size."""
    summary = pipelines.run_coverage(
        corpus, _library_schemas(settings), _ontology(settings),
        thresholds=tuple(float(t) for t in thresholds.split(",")),
        strata_spec=strata, mapping_path=mapping, out_path=out)
    click.echo(summary["table"], nl=False)


@main.command()
@click.option("--mode", type=click.Choice(["schemas", "documents"]), default="schemas",
              show_default=True)
@click.option("--corpus", required=True, type=click.Path(exists=True))
@click.option("--gold", required=True, type=click.Path(exists=True),
              help="TSV of doc_id<TAB>schema_id pairs.")
@click.option("--mapping", type=click.Path(exists=True), default=None)
@click.option("--strata", default="1:5,5:10,10:", show_default=True)
@click.option("--out", type=click.Path(), default=None)
@pass_settings
def rank(settings, mode, corpus, gold, mapping, strata, out):
    """Rank schemas per document (or documents per schema) against gold labels."""
    summary = pipelines.run_rank(
        corpus, _library_schemas(settings), _ontology(settings), gold,
        mode=mode, strata_spec=strata, mapping_path=mapping, out_path=out)
    click.echo(summary["table"], nl=False)


@main.command("intrusion-gen")
@click.option("--method", type=click.Choice(["library", "corpus"]), default="library",
              show_default=True)
@click.option("--corpus", type=click.Path(exists=True), default=None)
@click.option("--matches", type=click.Path(exists=True), default=None,
              help="matches.jsonl from `infer` (corpus method).")
@click.option("--mapping", type=click.Path(exists=True), default=None)
@click.option("--out-dir", required=True, type=click.Path())
@pass_settings
def intrusion_gen(settings, method, corpus, matches, mapping, out_dir):
    """Generate intrusion tasks (task file + separate answer key + review file)."""
    summary = pipelines.run_intrusion_gen(
        _library_schemas(settings), out_dir, method=method,
        seed=settings.get("seed", default=0, cast=int),
        corpus_path=corpus, ontology=_ontology(settings) if corpus else None,
        matches_path=matches, mapping_path=mapping)
    click.echo(json.dumps(summary))


@main.command("intrusion-score")
@click.option("--tasks", required=True, type=click.Path(exists=True))
@click.option("--answers", required=True, type=click.Path(exists=True))
@click.option("--responses", required=True, type=click.Path(exists=True))
@pass_settings
def intrusion_score(settings, tasks, answers, responses):
    """Score annotator responses and print accuracies plus random baselines."""
    report = pipelines.run_intrusion_score(tasks, answers, responses)
    click.echo(json.dumps(report, indent=2, sort_keys=True))


@main.command()
@click.option("--corpus", required=True, type=click.Path(exists=True))
@click.option("--mapping", type=click.Path(exists=True), default=None)
@click.option("--top-k", type=int, default=5, show_default=True)
@click.option("--out", required=True, type=click.Path())
@pass_settings
def infer(settings, corpus, mapping, top_k, out):
    """Match library schemas against each document via soft-logic inference."""
    summary = pipelines.run_infer(
        corpus, _library_schemas(settings), _ontology(settings), out,
        top_k=top_k, mapping_path=mapping)
    click.echo(json.dumps(summary))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8321, show_default=True)
@click.option("--skeletons", type=click.Path(), default=None,
              help="skeletons.jsonl served at /skeletons/{id}/instantiate.")
@pass_settings
def serve(settings, host, port, skeletons):
    """Run the HTTP API (and editor backend)."""
    import uvicorn

    from .api import create_app

    store = LibraryStore(settings.require("library"))
    ontology = _ontology(settings)
    skeletons = skeletons or settings.get("skeletons")
    app = create_app(store, ontology, skeletons_path=skeletons)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
