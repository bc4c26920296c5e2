"""Seed-and-fission extraction of QA pairs from a document.

One LLM call proposes seed questions, one answers them, then each
round asks for new pairs different from the current seeds, with the
retained questions of a round seeding the next.  Retained questions
are kept near-duplicate free by embedding cosine against everything
kept so far.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .embedding import cosine, embed
from .literature import QAPair
from .llm import ChatMessage, LlmError
from .prompts import NoticePrompt
from .records import FileUnreadableError


class UnparseableLlmOutput(Exception):
    def __init__(self, raw: str, reason: str):
        self.raw = raw
        self.reason = reason
        self.partial: list = []
        super().__init__(reason)


@dataclass(frozen=True)
class FissionConfig:
    seeds_per_doc: int = 5
    rounds: int = 2
    pairs_per_round: int = 5
    dedup_threshold: float = 0.95

    def __post_init__(self):
        if self.seeds_per_doc < 1 or self.pairs_per_round < 1:
            raise ValueError("seeds_per_doc and pairs_per_round must be positive")
        if self.rounds < 0:
            raise ValueError("rounds must be non-negative")
        if not 0.0 < self.dedup_threshold <= 1.0:
            raise ValueError("dedup_threshold must be in (0, 1]")


@dataclass(frozen=True)
class DocumentText:
    doi: str
    title: str
    body: str

    def __post_init__(self):
        if not self.body.strip():
            raise ValueError("document body must be non-empty")


def load_document(path: str | Path) -> DocumentText:
    """Documents are plain text: first line doi, second line title,
    rest is the body."""
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileUnreadableError(f"cannot read {path}: {exc}") from exc
    lines = raw.split("\n")
    if len(lines) < 3:
        raise ValueError(f"{path}: expected doi line, title line, then body")
    doi, title = lines[0].strip(), lines[1].strip()
    if not doi or not title:
        raise ValueError(f"{path}: doi and title lines must be non-empty")
    return DocumentText(doi=doi, title=title, body="\n".join(lines[2:]).strip())


_FENCE = re.compile(r"^```[a-zA-Z]*\s*$")


def _strip_fences(text: str) -> str:
    lines = [line for line in text.strip().splitlines() if not _FENCE.match(line)]
    return "\n".join(lines).strip()


def _load_json_array(text: str):
    cleaned = _strip_fences(text)
    if not cleaned:
        return []
    try:
        data = json.loads(cleaned)
    except json.JSONDecodeError:
        start, end = cleaned.find("["), cleaned.rfind("]")
        if start == -1 or end <= start:
            raise ValueError("no JSON array found")
        data = json.loads(cleaned[start : end + 1])
    if not isinstance(data, list):
        raise ValueError("top-level JSON value is not an array")
    return data


def _parse_questions(raw: str) -> list[str]:
    data = _load_json_array(raw)
    out = []
    for item in data:
        if not isinstance(item, str) or not item.strip():
            raise ValueError("array items must be non-empty strings")
        out.append(item.strip())
    return out


def _parse_pairs(raw: str) -> list[tuple[str, str]]:
    data = _load_json_array(raw)
    out = []
    for item in data:
        if not isinstance(item, dict):
            raise ValueError("array items must be objects")
        q, a = item.get("question"), item.get("answer")
        if not isinstance(q, str) or not q.strip() or not isinstance(a, str) or not a.strip():
            raise ValueError("each object needs non-empty question and answer")
        out.append((q.strip(), a.strip()))
    return out


_REPARSE_NUDGE = (
    "The previous reply could not be parsed. "
    "Reply again with only the JSON array, no prose and no code fences."
)


def _ask(llm, messages: list[ChatMessage], parser):
    """One completion plus, on a parse failure, one corrective retry."""
    raw = llm.complete(messages, temperature=0.2)
    try:
        return parser(raw)
    except ValueError as first:
        retry = messages + [
            ChatMessage(role="assistant", content=raw or "(empty)"),
            ChatMessage(role="user", content=f"{_REPARSE_NUDGE} ({first})"),
        ]
        raw2 = llm.complete(retry, temperature=0.2)
        try:
            return parser(raw2)
        except ValueError as second:
            raise UnparseableLlmOutput(raw2, str(second)) from second


def _seed_messages(doc: DocumentText, cfg: FissionConfig) -> list[ChatMessage]:
    prompt = NoticePrompt(
        task="Extract standalone questions from a scientific document.",
        instruction=(
            f"Propose at most {cfg.seeds_per_doc} clear questions that the document "
            "can answer. Every question must be understandable without the document "
            "and no two questions may repeat each other."
        ),
        note='Reply with only a JSON array of question strings, e.g. ["..."].',
        context=(("document title", doc.title), ("document body", doc.body)),
    )
    return prompt.to_messages()


def _answer_messages(doc: DocumentText, questions: list[str]) -> list[ChatMessage]:
    prompt = NoticePrompt(
        task="Answer questions using only a scientific document.",
        instruction="Answer each listed question concisely from the document body.",
        note=(
            "Reply with only a JSON array of objects, each with a question field "
            "repeating the question and an answer field."
        ),
        context=(
            ("document title", doc.title),
            ("document body", doc.body),
            ("questions", json.dumps(questions, ensure_ascii=False)),
        ),
    )
    return prompt.to_messages()


def _fission_messages(doc: DocumentText, seeds: list[str], cfg: FissionConfig) -> list[ChatMessage]:
    prompt = NoticePrompt(
        task="Generate new question-answer pairs from a scientific document.",
        instruction=(
            f"Produce at most {cfg.pairs_per_round} new question-answer pairs grounded "
            "in the document. Each new question must differ from every seed question."
        ),
        note=(
            "Reply with only a JSON array of objects, each with a question field "
            "and an answer field."
        ),
        context=(
            ("document title", doc.title),
            ("document body", doc.body),
            ("seed questions", json.dumps(seeds, ensure_ascii=False)),
        ),
    )
    return prompt.to_messages()


def extract_seeds(doc: DocumentText, llm, cfg: FissionConfig = FissionConfig()) -> list[str]:
    questions = _ask(llm, _seed_messages(doc, cfg), _parse_questions)
    seen = set()
    seeds = []
    for q in questions:
        if q in seen:
            continue
        seen.add(q)
        seeds.append(q)
    return seeds[: cfg.seeds_per_doc]


class _DedupSet:
    """Keeps questions whose embedding cosine stays below the threshold
    against everything already kept.  First occurrence wins."""

    def __init__(self, threshold: float):
        self.threshold = threshold
        self._vectors: list[np.ndarray] = []
        self._texts: set[str] = set()

    def admit(self, question: str) -> bool:
        if question in self._texts:
            return False
        vec = embed(question)
        for kept in self._vectors:
            if cosine(vec, kept) >= self.threshold:
                return False
        self._vectors.append(vec)
        self._texts.add(question)
        return True


def fission_round(
    doc: DocumentText,
    seeds: list[str],
    llm,
    cfg: FissionConfig = FissionConfig(),
) -> list[QAPair]:
    """One generation round: new pairs whose questions are near-duplicate
    free against the seeds and against each other."""
    if not seeds:
        raise ValueError("seeds must be non-empty")
    parsed = _ask(llm, _fission_messages(doc, seeds, cfg), _parse_pairs)
    dedup = _DedupSet(cfg.dedup_threshold)
    for seed in seeds:
        dedup.admit(seed)
    out = []
    for question, answer in parsed:
        if not dedup.admit(question):
            continue
        out.append(QAPair(id=len(out), question=question, answer=answer,
                          title=doc.title, doi=doc.doi))
        if len(out) >= cfg.pairs_per_round:
            break
    return out


def run_fission(doc: DocumentText, llm, cfg: FissionConfig = FissionConfig()) -> list[QAPair]:
    """Full pipeline: seeds, seed answers, then cfg.rounds fission rounds.
    On an LLM failure the partial pair list rides on the exception as
    .partial."""
    collected: list[QAPair] = []
    dedup = _DedupSet(cfg.dedup_threshold)

    def _attach(exc):
        exc.partial = list(collected)
        return exc

    try:
        seeds = extract_seeds(doc, llm, cfg)
    except (LlmError, UnparseableLlmOutput) as exc:
        raise _attach(exc)
    if not seeds:
        return []

    try:
        answered = _ask(llm, _answer_messages(doc, seeds), _parse_pairs)
    except (LlmError, UnparseableLlmOutput) as exc:
        raise _attach(exc)
    for question, answer in answered:
        if len(collected) >= cfg.seeds_per_doc:
            break
        if dedup.admit(question):
            collected.append(QAPair(id=len(collected), question=question,
                                    answer=answer, title=doc.title, doi=doc.doi))

    current = seeds
    for _ in range(cfg.rounds):
        if not current:
            break
        try:
            batch = fission_round(doc, current, llm, cfg)
        except (LlmError, UnparseableLlmOutput) as exc:
            raise _attach(exc)
        kept = []
        for pair in batch:
            if dedup.admit(pair.question):
                kept.append(pair)
        base = len(collected)
        collected.extend(
            QAPair(id=base + i, question=p.question, answer=p.answer,
                   title=p.title, doi=p.doi)
            for i, p in enumerate(kept)
        )
        current = [p.question for p in kept]
    return collected
