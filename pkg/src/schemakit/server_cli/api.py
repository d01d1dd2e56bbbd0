"""HTTP API serving the schema store, live validation, and async jobs.

Error contract: 400 malformed body, 404 unknown id, 409 version conflict,
422 validation errors (report attached). POST /validate is pure and never
touches the store.
"""

from __future__ import annotations

import json
import threading
import traceback
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import Body, FastAPI, HTTPException, Query, Response
from fastapi.middleware.cors import CORSMiddleware

from ..ontology import Ontology, ontology_to_document
from ..schema_model import (
    SchemaFormatError,
    mark_draft,
    schema_from_document,
    schema_from_skeleton,
    schema_to_document,
    validate_schema,
)
from ..skeleton_builder import read_skeletons
from . import pipelines
from .store import LibraryStore, UnknownSchemaError, VersionConflictError

JOB_KINDS = ("mine", "build", "coverage", "rank", "intrusion", "infer")


@dataclass
class JobRecord:
    job_id: str
    kind: str
    status: str  # pending -> running -> done | failed
    config: dict
    output_paths: dict = field(default_factory=dict)
    error: str | None = None

    def to_document(self) -> dict:
        return {
            "job_id": self.job_id,
            "kind": self.kind,
            "status": self.status,
            "config": self.config,
            "output_paths": self.output_paths,
            "error": self.error,
        }


class JobManager:
    def __init__(self, store: LibraryStore, ontology: Ontology, job_root: Path,
                 max_workers: int = 2):
        self.store = store
        self.ontology = ontology
        self.job_root = Path(job_root)
        self.executor = ThreadPoolExecutor(max_workers=max_workers)
        self.records: dict[str, JobRecord] = {}
        self._lock = threading.Lock()
        self._counter = 0

    def submit(self, kind: str, config: dict) -> JobRecord:
        if kind not in JOB_KINDS:
            raise ValueError(f"unknown job kind {kind!r}")
        with self._lock:
            self._counter += 1
            job_id = f"{kind}-{self._counter:04d}-{uuid.uuid4().hex[:8]}"
            record = JobRecord(job_id=job_id, kind=kind, status="pending", config=config)
            self.records[job_id] = record
        self.executor.submit(self._run, record)
        return record

    def get(self, job_id: str) -> JobRecord | None:
        with self._lock:
            return self.records.get(job_id)

    def _run(self, record: JobRecord) -> None:
        with self._lock:
            record.status = "running"
        out_dir = self.job_root / record.job_id
        out_dir.mkdir(parents=True, exist_ok=True)
        cfg = record.config
        try:
            if record.kind == "mine":
                out = out_dir / "itemsets.tsv"
                summary = pipelines.run_mine(
                    cfg["transactions"], out,
                    min_support=int(cfg.get("min_support", 1)),
                    min_items=int(cfg.get("min_items", 2)),
                    max_items=int(cfg.get("max_items", 10)))
                outputs = {"itemsets": str(out)}
            elif record.kind == "build":
                summary = pipelines.run_build_skeletons(
                    cfg["itemsets"], out_dir, self.ontology,
                    scorer_spec=cfg.get("scorer", "pmi"),
                    transactions_path=cfg.get("transactions"),
                    top_sequences=int(cfg.get("top_sequences", 100_000)),
                    reuse_cap=int(cfg.get("reuse_cap", 50)),
                    top_chains=int(cfg.get("top_chains", 1_000)))
                outputs = {"skeletons": summary["skeletons"], "queue": summary["queue"]}
            elif record.kind == "coverage":
                out = out_dir / "coverage.txt"
                summary = pipelines.run_coverage(
                    cfg["corpus"], self.store.all_schemas(), self.ontology,
                    thresholds=tuple(cfg.get("thresholds", (0.5, 0.7, 0.9))),
                    strata_spec=cfg.get("strata", "1:5,5:10,10:"),
                    mapping_path=cfg.get("mapping"), out_path=out)
                outputs = {"coverage": str(out)}
            elif record.kind == "rank":
                out = out_dir / "ranking.txt"
                summary = pipelines.run_rank(
                    cfg["corpus"], self.store.all_schemas(), self.ontology,
                    cfg["gold"], mode=cfg.get("mode", "schemas"),
                    strata_spec=cfg.get("strata", "1:5,5:10,10:"),
                    mapping_path=cfg.get("mapping"), out_path=out)
                outputs = {"ranking": str(out)}
            elif record.kind == "intrusion":
                summary = pipelines.run_intrusion_gen(
                    self.store.all_schemas(), out_dir,
                    method=cfg.get("method", "library"),
                    seed=cfg.get("seed", 0),
                    corpus_path=cfg.get("corpus"), ontology=self.ontology,
                    matches_path=cfg.get("matches"), mapping_path=cfg.get("mapping"))
                outputs = {"tasks": summary["tasks"], "answers": summary["answers"],
                           "review": summary["review"]}
            else:  # infer
                out = out_dir / "matches.jsonl"
                summary = pipelines.run_infer(
                    cfg["corpus"], self.store.all_schemas(), self.ontology, out,
                    top_k=int(cfg.get("top_k", 5)), mapping_path=cfg.get("mapping"))
                outputs = {"matches": str(out), "log": summary["log"]}
            (out_dir / "summary.json").write_text(
                json.dumps(summary, indent=2, sort_keys=True, default=str) + "\n")
            with self._lock:
                record.output_paths = outputs
                record.status = "done"
        except Exception as exc:  # job failures are reported via the record
            with self._lock:
                record.status = "failed"
                record.error = f"{type(exc).__name__}: {exc}"
                record.output_paths = {"traceback": traceback.format_exc()}


def create_app(store: LibraryStore, ontology: Ontology,
               skeletons_path: str | Path | None = None,
               job_root: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="schemakit", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"])
    jobs = JobManager(store, ontology, Path(job_root or store.root / "jobs"))

    def parse_body_schema(body: dict):
        try:
            return schema_from_document(body)
        except SchemaFormatError as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    @app.get("/ontology")
    def get_ontology():
        return ontology_to_document(ontology)

    @app.get("/schemas")
    def list_schemas():
        return {"schemas": store.list()}

    @app.get("/schemas/{schema_id}")
    def get_schema(schema_id: str):
        try:
            schema, version = store.get(schema_id)
        except UnknownSchemaError:
            raise HTTPException(status_code=404, detail=f"unknown schema {schema_id!r}")
        return {"version": version, "schema": schema_to_document(schema)}

    @app.put("/schemas/{schema_id}")
    def put_schema(schema_id: str, body: dict = Body(...),
                   version: int | None = Query(default=None),
                   draft: bool = Query(default=False)):
        schema = parse_body_schema(body)
        if schema.id != schema_id:
            raise HTTPException(
                status_code=400,
                detail=f"body id {schema.id!r} does not match path id {schema_id!r}")
        if draft:
            schema = mark_draft(schema)
        report = validate_schema(schema, ontology)
        if not report.ok and not draft:
            raise HTTPException(status_code=422, detail=report.to_document())
        try:
            new_version = store.put(schema, expected_version=version)
        except VersionConflictError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        return {"id": schema.id, "version": new_version, "validation": report.to_document()}

    @app.delete("/schemas/{schema_id}", status_code=204)
    def delete_schema(schema_id: str):
        try:
            store.delete(schema_id)
        except UnknownSchemaError:
            raise HTTPException(status_code=404, detail=f"unknown schema {schema_id!r}")
        return Response(status_code=204)

    @app.post("/validate")
    def validate(body: dict = Body(...)):
        schema = parse_body_schema(body)
        return validate_schema(schema, ontology).to_document()

    @app.post("/skeletons/{skeleton_id}/instantiate")
    def instantiate(skeleton_id: str):
        if skeletons_path is None or not Path(skeletons_path).exists():
            raise HTTPException(status_code=404, detail="no skeleton file configured")
        for skeleton in read_skeletons(skeletons_path):
            if skeleton.id == skeleton_id:
                schema = schema_from_skeleton(skeleton, ontology)
                return {"schema": schema_to_document(schema)}
        raise HTTPException(status_code=404, detail=f"unknown skeleton {skeleton_id!r}")

    @app.post("/jobs/{kind}")
    def submit_job(kind: str, body: dict = Body(default={})):
        try:
            record = jobs.submit(kind, body)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return record.to_document()

    @app.get("/jobs/{job_id}")
    def get_job(job_id: str):
        record = jobs.get(job_id)
        if record is None:
            raise HTTPException(status_code=404, detail=f"unknown job {job_id!r}")
        return record.to_document()

    @app.get("/jobs/{job_id}/output")
    def get_job_output(job_id: str):
        record = jobs.get(job_id)
        if record is None:
            raise HTTPException(status_code=404, detail=f"unknown job {job_id!r}")
        if record.status != "done":
            raise HTTPException(status_code=404,
                                detail=f"job {job_id!r} has no output (status {record.status})")
        primary = next(iter(record.output_paths.values()), None)
        if primary is None or not Path(primary).exists():
            raise HTTPException(status_code=404, detail="output file missing")
        return Response(content=Path(primary).read_text(encoding="utf-8"),
                        media_type="text/plain")

    app.state.jobs = jobs
    return app
