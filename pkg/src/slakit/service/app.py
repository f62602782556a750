"""The HTTP API wiring the core modules into the transcription workflow.

Every mutation of one occasion goes through a per-occasion lock, edits
persist through the revision-checked store, and each response that changes
the transcript reports a fresh (always empty) validation result. Loop
sessions are the only state a restart loses.
"""

from __future__ import annotations

import threading
import uuid
import xml.etree.ElementTree as ET
from collections import defaultdict
from dataclasses import replace

from fastapi import BackgroundTasks, FastAPI, Query, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse

from slakit import chat
from slakit.chat.diagnostics import ChatEditError
from slakit.media import (
    LoopAtEndError,
    build_waveform_cache,
    create_loop,
    advance_loop,
    decode_sidecar,
    decode_wav,
    encode_sidecar,
    encode_wav,
    excerpt,
    pyramid_level_count,
    query_peaks,
    set_loop,
)
from slakit.networks import (
    Selection,
    System,
    enumerate_valid_selections,
    format_entry,
    merge_events_into_transcript,
    parse_entry,
)
from slakit.reports import (
    code_location_report,
    coverage_report,
    effort_estimate,
    render_timeline_svg,
    report_to_json,
)
from slakit.service.config import Settings
from slakit.service.errors import ApiError, to_api_error
from slakit.service.loops import LoopRegistry
from slakit.service.schemas import (
    ContactBody,
    EpisodeBody,
    HeaderBody,
    IndexEventBody,
    LoopCreateBody,
    LoopPatchBody,
    NetworkBody,
    NetworkReviseBody,
    OccasionBody,
    ParticipantBody,
    PlaceBody,
    ProjectBody,
    ResourceBody,
    TierBody,
    UtteranceBody,
    event_json,
    loop_state_json,
)
from slakit.store import CorpusStore, contact_to_participant
from slakit.store.registries import ContactRecord
from slakit.timebase import TimeSpan


def _occasion_meta(xml: str) -> tuple[str | None, str | None]:
    root = ET.fromstring(xml)
    return root.get("id"), root.get("title")


def create_app(settings: Settings, store: CorpusStore | None = None) -> FastAPI:
    store = store or CorpusStore.open(settings.store_root)
    loops = LoopRegistry(timeout_s=settings.session_timeout_s)
    occasion_locks: dict[str, threading.Lock] = defaultdict(threading.Lock)

    app = FastAPI(title="slakit transcoder service", version="0.1.0")

    @app.exception_handler(ApiError)
    async def handle_api_error(_request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status, content=exc.body())

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(_request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422,
            content={"error": {"code": "BAD_REQUEST", "message": str(exc.errors()[:3])}},
        )

    @app.middleware("http")
    async def module_errors_to_api_shape(request: Request, call_next):
        # registered handlers catch ApiError/validation; everything else from
        # the modules converts here so no undocumented failure shape escapes
        try:
            return await call_next(request)
        except Exception as exc:  # noqa: BLE001 - mapping table decides
            try:
                api_exc = to_api_error(exc)
            except Exception:
                api_exc = ApiError(500, "INTERNAL", f"{type(exc).__name__}: {exc}")
            return JSONResponse(status_code=api_exc.status, content=api_exc.body())

    # -- helpers ---------------------------------------------------------------

    def load_doc(occasion_id: str) -> tuple[chat.ChatDocument, int, str | None]:
        xml, revision = store.get_occasion(occasion_id)
        doc = chat.from_sla_xml(xml)
        _, title = _occasion_meta(xml)
        return doc, revision, title

    def commit_doc(
        occasion_id: str,
        doc: chat.ChatDocument,
        expected_revision: int,
        title: str | None,
    ) -> int:
        xml = chat.to_sla_xml(doc, occasion_id=occasion_id, title=title)
        return store.put_occasion(occasion_id, xml, expected_revision)

    def doc_summary(occasion_id: str, doc: chat.ChatDocument, revision: int) -> dict:
        return {
            "occasion_id": occasion_id,
            "revision": revision,
            "episode_count": len(doc.episodes),
            "utterance_count": doc.utterance_count,
            "participants": [p.code for p in doc.participants],
            "diagnostics": [
                {"code": d.code, "line": d.line, "message": d.message, "severity": d.severity}
                for d in chat.validate(doc)
                if d.is_error
            ],
        }

    def span_from_body(span_body, loop_id: str | None, required: bool) -> TimeSpan | None:
        if span_body is not None and loop_id is not None:
            raise ApiError(422, "BAD_REQUEST", "give either span or loop_id, not both")
        if span_body is not None:
            try:
                return span_body.to_span()
            except ValueError as exc:
                raise ApiError(422, "E008", str(exc)) from exc
        if loop_id is not None:
            state = loops.get(loop_id).state
            return TimeSpan(state.start_ms, state.start_ms + state.duration_ms)
        if required:
            raise ApiError(422, "NO_SPAN", "no span given and no loop session cited")
        return None

    def participant_from_body(body: ParticipantBody) -> chat.Participant:
        if body.contact_id:
            return contact_to_participant(store.contacts.latest(body.contact_id))
        if not (body.code and body.name and body.role):
            raise ApiError(
                422, "BAD_REQUEST", "participant needs contact_id or code+name+role"
            )
        return chat.Participant(
            code=body.code,
            name=body.name,
            role=body.role,
            birth=body.birth,
            age=body.age,
            ses=body.ses,
            sex=body.sex,
        )

    def add_participant(doc: chat.ChatDocument, part: chat.Participant) -> chat.ChatDocument:
        if part.code in doc.participant_codes():
            raise ChatEditError("E007", f"participant code {part.code} already declared")
        updated = replace(doc, participants=doc.participants + (part,))
        findings = [d for d in chat.validate(updated) if d.is_error]
        if findings:
            raise ChatEditError(findings[0].code, findings[0].message)
        return updated

    def contact_json(record: ContactRecord) -> dict:
        return {
            "contact_id": record.contact_id,
            "revision": record.revision,
            "code": record.code,
            "name": record.name,
            "role": record.role,
            "birth": record.birth,
            "age": record.age,
            "ses": record.ses,
            "sex": record.sex,
            "valid_from": record.valid_from,
        }

    # -- service info ------------------------------------------------------------

    @app.get("/")
    def service_info():
        return {"service": "slakit", "version": app.version, "store": str(store.root)}

    # -- projects ------------------------------------------------------------------

    @app.post("/projects", status_code=201)
    def create_project(body: ProjectBody):
        project = store.create_project(body.title)
        return {
            "project_id": project.project_id,
            "title": project.title,
            "revision": project.revision,
        }

    @app.get("/projects")
    def list_projects():
        index = store.project_index()
        return {
            "revision": index.revision,
            "projects": [
                {"project_id": e.project_id, "title": e.title, "path": e.path}
                for e in index.entries
            ],
        }

    @app.get("/projects/{project_id}")
    def get_project(project_id: str):
        project = store.get_project(project_id)
        return {
            "project_id": project.project_id,
            "title": project.title,
            "occasions": list(project.occasion_ids),
            "resources": list(project.resource_ids),
            "revision": project.revision,
        }

    @app.post("/projects/{project_id}/resources", status_code=201)
    def add_project_resource(project_id: str, body: dict):
        resource_id = body.get("resource_id", "")
        project = store.link_resource(project_id, resource_id)
        return {
            "project_id": project.project_id,
            "resources": list(project.resource_ids),
            "revision": project.revision,
        }

    @app.post("/projects/{project_id}/occasions", status_code=201)
    def create_occasion(project_id: str, body: OccasionBody):
        store.get_project(project_id)  # 404 before writing anything
        participants = [participant_from_body(p) for p in body.participants]
        doc = chat.ChatDocument.new(participants)
        findings = [d for d in chat.validate(doc) if d.is_error]
        if findings:
            raise ChatEditError(findings[0].code, findings[0].message)
        occasion_id = body.occasion_id or f"o-{uuid.uuid4().hex[:12]}"
        store.create_occasion(
            occasion_id, chat.to_sla_xml(doc, occasion_id=occasion_id, title=body.title)
        )
        store.link_occasion(project_id, occasion_id)
        doc_now, revision, _ = load_doc(occasion_id)
        return doc_summary(occasion_id, doc_now, revision)

    # -- occasions and media ----------------------------------------------------------

    @app.get("/occasions/{occasion_id}")
    def get_occasion(occasion_id: str):
        record = store.occasion_record(occasion_id)
        doc = chat.from_sla_xml(record.xml)
        summary = doc_summary(occasion_id, doc, record.revision)
        summary.update(
            {
                "has_media": record.has_media,
                "waveform_ready": record.has_sidecar,
                "duration_ms": record.duration_ms,
            }
        )
        return summary

    @app.post("/occasions/{occasion_id}/media", status_code=202)
    async def ingest_media(occasion_id: str, request: Request, background: BackgroundTasks):
        payload = await request.body()
        pcm = decode_wav(payload)  # 415 on undecodable input
        with occasion_locks[occasion_id]:
            store.put_media(occasion_id, payload)

        def build_sidecar():
            with occasion_locks[occasion_id]:
                cache = build_waveform_cache(
                    decode_wav(store.get_media(occasion_id)), settings.base_bucket
                )
                store.put_sidecar(occasion_id, encode_sidecar(cache))

        background.add_task(build_sidecar)
        return {
            "occasion_id": occasion_id,
            "status": "building",
            "duration_ms": pcm.duration_ms,
            "sample_rate": pcm.sample_rate,
            "total_samples": len(pcm),
            "base_bucket": settings.base_bucket,
            "level_count": pyramid_level_count(len(pcm), settings.base_bucket),
        }

    @app.get("/occasions/{occasion_id}/media")
    def download_media(occasion_id: str):
        return Response(content=store.get_media(occasion_id), media_type="audio/wav")

    @app.get("/occasions/{occasion_id}/waveform")
    def waveform_tiles(
        occasion_id: str,
        level: int = 0,
        from_bucket: int = Query(0, alias="from"),
        count: int | None = None,
    ):
        if not store.occasion_exists(occasion_id):
            raise ApiError(404, "NOT_FOUND", f"no occasion {occasion_id!r}")
        if not store.sidecar_path(occasion_id).exists():
            if store.media_path(occasion_id).exists():
                return JSONResponse(status_code=202, content={"status": "building"})
            raise ApiError(404, "NOT_FOUND", f"occasion {occasion_id!r} has no media")
        cache = decode_sidecar(store.get_sidecar(occasion_id))
        peaks = query_peaks(cache, level, from_bucket, count)
        return {
            "status": "ready",
            "level": level,
            "from_bucket": max(0, from_bucket),
            "peaks": [[lo, hi] for lo, hi in peaks],
            "level_count": cache.level_count,
            "bucket_count": cache.bucket_count(level),
            "base_bucket": cache.base_bucket,
            "sample_rate": cache.sample_rate,
            "total_samples": cache.total_samples,
            "duration_ms": (1000 * cache.total_samples) // cache.sample_rate,
        }

    @app.get("/occasions/{occasion_id}/excerpt")
    def media_excerpt(occasion_id: str, start_ms: int, end_ms: int):
        pcm = decode_wav(store.get_media(occasion_id))
        try:
            span = TimeSpan(start_ms, end_ms)
        except ValueError as exc:
            raise ApiError(422, "E008", str(exc)) from exc
        cut = excerpt(pcm, span)
        return Response(
            content=encode_wav(cut.audio),
            media_type="audio/wav",
            headers={
                "X-Span-Start-Ms": str(cut.span.start_ms),
                "X-Span-End-Ms": str(cut.span.end_ms),
            },
        )

    # -- loop sessions -------------------------------------------------------------------

    @app.post("/occasions/{occasion_id}/loops", status_code=201)
    def create_loop_session(occasion_id: str, body: LoopCreateBody):
        duration = store.occasion_duration_ms(occasion_id)
        if duration is None:
            if not store.occasion_exists(occasion_id):
                raise ApiError(404, "NOT_FOUND", f"no occasion {occasion_id!r}")
            raise ApiError(422, "NO_MEDIA", "ingest media before opening a loop")
        state = create_loop(duration, body.start_ms, body.duration_ms, body.offset_ms)
        session = loops.create(occasion_id, state, body.contact_id)
        return loop_state_json(session.loop_id, occasion_id, state)

    @app.get("/loops/{loop_id}")
    def get_loop(loop_id: str):
        session = loops.get(loop_id)
        return loop_state_json(loop_id, session.occasion_id, session.state)

    @app.post("/loops/{loop_id}/advance")
    def advance_loop_session(loop_id: str):
        session = loops.get(loop_id)
        try:
            state = advance_loop(session.state)
        except LoopAtEndError as exc:
            loops.update(loop_id, exc.state)
            raise
        loops.update(loop_id, state)
        return loop_state_json(loop_id, session.occasion_id, state)

    @app.patch("/loops/{loop_id}")
    def patch_loop_session(loop_id: str, body: LoopPatchBody):
        session = loops.get(loop_id)
        state = set_loop(
            session.state,
            start_ms=body.start_ms,
            duration_ms=body.duration_ms,
            offset_ms=body.offset_ms,
        )
        loops.update(loop_id, state)
        return loop_state_json(loop_id, session.occasion_id, state)

    # -- transcript edits -----------------------------------------------------------------

    @app.post("/occasions/{occasion_id}/utterances", status_code=201)
    def append_utterance(occasion_id: str, body: UtteranceBody):
        span = span_from_body(body.span, body.loop_id, required=False)
        with occasion_locks[occasion_id]:
            doc, revision, title = load_doc(occasion_id)
            expected = revision if body.expected_revision is None else body.expected_revision
            updated = chat.append_utterance(doc, body.speaker, body.text, body.terminator, span)
            new_revision = commit_doc(occasion_id, updated, expected, title)
        summary = doc_summary(occasion_id, updated, new_revision)
        summary["utterance_id"] = f"{occasion_id}.{updated.utterance_count - 1}"
        if span is not None:
            summary["span"] = {"start_ms": span.start_ms, "end_ms": span.end_ms}
        return summary

    @app.post("/utterances/{utterance_id}/tiers", status_code=201)
    def attach_tier(utterance_id: str, body: TierBody):
        occasion_id, _, index_text = utterance_id.rpartition(".")
        if not occasion_id or not index_text.isdigit():
            raise ApiError(
                422, "BAD_REQUEST", "utterance id must be '<occasion_id>.<index>'"
            )
        with occasion_locks[occasion_id]:
            doc, revision, title = load_doc(occasion_id)
            expected = revision if body.expected_revision is None else body.expected_revision
            updated = chat.attach_tier(doc, int(index_text), body.code, body.content)
            new_revision = commit_doc(occasion_id, updated, expected, title)
        return doc_summary(occasion_id, updated, new_revision)

    @app.post("/occasions/{occasion_id}/episodes", status_code=201)
    def new_episode(occasion_id: str, body: EpisodeBody):
        headers = [chat.Header(h.kind, h.value) for h in body.headers]
        if body.place_id:
            place = store.places.get(body.place_id)
            for kind, value in (
                ("Situation", place.situation),
                ("Activities", place.activities),
                ("Room Layout", place.room_layout),
            ):
                if value:
                    headers.append(chat.Header(kind, value))
        with occasion_locks[occasion_id]:
            doc, revision, title = load_doc(occasion_id)
            expected = revision if body.expected_revision is None else body.expected_revision
            updated = chat.new_episode(doc, headers)
            new_revision = commit_doc(occasion_id, updated, expected, title)
        return doc_summary(occasion_id, updated, new_revision)

    @app.post("/occasions/{occasion_id}/participants", status_code=201)
    def declare_participant(occasion_id: str, body: ParticipantBody):
        part = participant_from_body(body)
        with occasion_locks[occasion_id]:
            doc, revision, title = load_doc(occasion_id)
            updated = add_participant(doc, part)
            new_revision = commit_doc(occasion_id, updated, revision, title)
        return doc_summary(occasion_id, updated, new_revision)

    # -- indexing ------------------------------------------------------------------------

    @app.post("/occasions/{occasion_id}/index-events", status_code=201)
    def record_index_event(occasion_id: str, body: IndexEventBody):
        span = span_from_body(body.span, body.loop_id, required=True)
        selection = Selection.from_dict(body.selection)
        with occasion_locks[occasion_id]:
            event = store.record_index_event(
                occasion_id,
                body.network_id,
                body.version,
                selection,
                span,
                note=body.note,
                author=body.author,
            )
            doc, revision, title = load_doc(occasion_id)
            merged = merge_events_into_transcript(doc, [event])
            tier_count = sum(
                1
                for _, _, u in merged.iter_utterances()
                for t in u.tiers
                if t.code == "ind"
            ) - sum(
                1 for _, _, u in doc.iter_utterances() for t in u.tiers if t.code == "ind"
            )
            if merged != doc:
                commit_doc(occasion_id, merged, revision, title)
        payload = event_json(event)
        payload["merged_tiers"] = tier_count
        payload["standalone_comment"] = tier_count == 0
        return payload

    @app.get("/occasions/{occasion_id}/index-events")
    def list_index_events(occasion_id: str):
        if not store.occasion_exists(occasion_id):
            raise ApiError(404, "NOT_FOUND", f"no occasion {occasion_id!r}")
        return {"events": [event_json(e) for e in store.list_events(occasion_id)]}

    @app.get("/occasions/{occasion_id}/validate")
    def validate_occasion(occasion_id: str):
        doc, _, _ = load_doc(occasion_id)
        return {
            "diagnostics": [
                {"code": d.code, "line": d.line, "message": d.message, "severity": d.severity}
                for d in chat.validate(doc)
            ]
        }

    # -- reports --------------------------------------------------------------------------

    @app.get("/occasions/{occasion_id}/reports/{kind}")
    def get_report(occasion_id: str, kind: str, format: str = "json", width_px: int = 800):
        if kind not in ("coverage", "locations", "effort"):
            raise ApiError(404, "NOT_FOUND", f"no report kind {kind!r}")
        if not store.occasion_exists(occasion_id):
            raise ApiError(404, "NOT_FOUND", f"no occasion {occasion_id!r}")
        duration = store.occasion_duration_ms(occasion_id)
        if duration is None:
            raise ApiError(422, "NO_MEDIA", "reports need ingested media (duration unknown)")
        events = store.list_events(occasion_id)
        if kind == "effort":
            report = effort_estimate(duration / 60_000.0)
        elif kind == "coverage":
            report = coverage_report(duration, events, occasion_id=occasion_id)
        else:
            report = code_location_report(duration, events, occasion_id=occasion_id)
        if format == "svg":
            if kind == "effort":
                raise ApiError(422, "BAD_REQUEST", "the effort report has no SVG form")
            return Response(
                content=render_timeline_svg(report, width_px=width_px),
                media_type="image/svg+xml",
            )
        return Response(content=report_to_json(report), media_type="application/json")

    # -- export ----------------------------------------------------------------------------

    @app.get("/occasions/{occasion_id}/export")
    def export_occasion(occasion_id: str, format: str = "chat"):
        xml, _ = store.get_occasion(occasion_id)
        if format == "sla-xml":
            return Response(content=xml, media_type="application/xml")
        if format == "chat":
            doc = chat.from_sla_xml(xml)
            return PlainTextResponse(content=chat.serialize_chat(doc))
        raise ApiError(422, "BAD_REQUEST", f"unknown export format {format!r}")

    # -- registries --------------------------------------------------------------------------

    @app.post("/contacts", status_code=201)
    def upsert_contact(body: ContactBody):
        record = store.contacts.upsert(
            body.code,
            body.name,
            body.role,
            birth=body.birth,
            age=body.age,
            ses=body.ses,
            sex=body.sex,
            contact_id=body.contact_id,
        )
        return contact_json(record)

    @app.get("/contacts")
    def list_contacts():
        return {"contacts": [contact_json(r) for r in store.contacts.list_latest()]}

    @app.get("/contacts/{contact_id}")
    def get_contact(contact_id: str):
        return contact_json(store.contacts.latest(contact_id))

    @app.get("/contacts/{contact_id}/history")
    def contact_history(contact_id: str):
        return {"history": [contact_json(r) for r in store.contacts.history(contact_id)]}

    @app.post("/places", status_code=201)
    def add_place(body: PlaceBody):
        place = store.places.add(body.situation, body.activities, body.room_layout)
        return {
            "place_id": place.place_id,
            "situation": place.situation,
            "activities": place.activities,
            "room_layout": place.room_layout,
        }

    @app.get("/places")
    def list_places():
        return {
            "places": [
                {
                    "place_id": p.place_id,
                    "situation": p.situation,
                    "activities": p.activities,
                    "room_layout": p.room_layout,
                }
                for p in store.places.list()
            ]
        }

    @app.post("/resources", status_code=201)
    def log_resource(body: ResourceBody):
        record = store.resources.log(
            body.kind,
            body.location,
            description=body.description,
            collected_at=body.collected_at,
            occasion_ids=tuple(body.occasion_ids),
        )
        return {
            "resource_id": record.resource_id,
            "kind": record.kind,
            "location": record.location,
            "description": record.description,
            "collected_at": record.collected_at,
            "occasion_ids": list(record.occasion_ids),
        }

    @app.get("/resources")
    def list_resources():
        return {
            "resources": [
                {
                    "resource_id": r.resource_id,
                    "kind": r.kind,
                    "location": r.location,
                    "description": r.description,
                }
                for r in store.resources.list()
            ]
        }

    @app.delete("/resources/{resource_id}")
    def delete_resource(resource_id: str):
        store.resources.delete(resource_id)  # always raises AppendOnlyError

    # -- networks -------------------------------------------------------------------------------

    def system_json(sys_: System) -> dict:
        return {
            "name": sys_.name,
            "entry": format_entry(sys_.entry),
            "options": list(sys_.options),
        }

    def network_json(network) -> dict:
        return {
            "network_id": network.network_id,
            "name": network.name,
            "deleted": network.deleted,
            "head_version": network.head.version,
            "versions": [
                {"version": v.version, "systems": [system_json(s) for s in v.systems]}
                for v in network.versions
            ],
        }

    @app.post("/networks", status_code=201)
    def create_network(body: NetworkBody):
        systems = tuple(
            System(name=s.name, entry=parse_entry(s.entry), options=tuple(s.options))
            for s in body.systems
        )
        network = store.create_network(body.name, systems, network_id=body.network_id)
        return network_json(network)

    @app.get("/networks")
    def list_networks():
        return {"networks": [network_json(n) for n in store.list_networks()]}

    @app.get("/networks/{network_id}")
    def get_network(network_id: str):
        return network_json(store.get_network(network_id))

    @app.post("/networks/{network_id}/versions", status_code=201)
    def revise_network(network_id: str, body: NetworkReviseBody):
        systems = tuple(
            System(name=s.name, entry=parse_entry(s.entry), options=tuple(s.options))
            for s in body.systems
        )
        version = store.revise_network(network_id, systems)
        return {"version": version.version, "systems": [system_json(s) for s in version.systems]}

    def pinned_version(network_id: str, version: int):
        try:
            return store.get_network(network_id).version(version)
        except KeyError as exc:
            raise ApiError(404, "NOT_FOUND", str(exc.args[0])) from exc

    @app.get("/networks/{network_id}/versions/{version}")
    def get_network_version(network_id: str, version: int):
        pinned = pinned_version(network_id, version)
        return {"version": pinned.version, "systems": [system_json(s) for s in pinned.systems]}

    @app.get("/networks/{network_id}/versions/{version}/selections")
    def enumerate_selections(network_id: str, version: int):
        pinned = pinned_version(network_id, version)
        selections = enumerate_valid_selections(pinned, bound=settings.enumeration_bound)
        return {
            "selections": sorted(
                (s.as_dict() for s in selections),
                key=lambda d: sorted(d.items()),
            )
        }

    @app.delete("/networks/{network_id}")
    def tombstone_network(network_id: str):
        return network_json(store.tombstone_network(network_id))

    return app
