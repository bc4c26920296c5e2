"""Prompt construction.

Prompts are organized in named sections rendered in a fixed order:
Task, Instruction, Example, Explanation (optional), Context, Note.
The first three form the system message; the rest go to the user
message, so the section order survives message concatenation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

from .llm import ChatMessage


class EmptySchema(ValueError):
    pass


CYPHER_TASK = "Generate Cypher statement to query a graph database."
CYPHER_INSTRUCTION = (
    "Describe the properties for a given or recommend materials according to human question."
)
CYPHER_EXAMPLE = (
    "# Query for the phonon properties of material:\n"
    "MATCH (n:Formula) RETURN n.proto AS proto, n.lines AS lines, "
    "n.ring_pts AS ring_pts, n.weyl_pts AS weyl_pts"
)
CYPHER_NOTE = (
    "Do not include any explanations or apologies in your responses. "
    "Do not respond to any questions that might ask you anything other than "
    "to construct a Cypher statement. "
    "Do not include any text except the generated Cypher statement."
)

SYNTHESIS_TASK = (
    "You are a helpful question-answering agent. "
    "Your task is to analyze and synthesize information from two sources."
)
SYNTHESIS_INSTRUCTION = (
    "The top result from a similarity search is literature information "
    "and relevant data from a graph database is MaterialsKG information."
)
SYNTHESIS_NOTE = (
    "If literature information is provided, please include DOI in your response. "
    "If matID is provided in Cypher query results, please add prefix as reference, "
    "else show http://materiae.iphy.ac.cn as reference in your response."
)


@dataclass(frozen=True)
class NoticePrompt:
    task: str
    instruction: str
    note: str
    examples: Tuple[str, ...] = ()
    context: Tuple[Tuple[str, str], ...] = ()
    explanation: Optional[str] = None

    def __post_init__(self):
        for name in ("task", "instruction", "note"):
            if not getattr(self, name).strip():
                raise ValueError(f"{name} section must be non-empty")

    def to_messages(self) -> list[ChatMessage]:
        system_parts = [f"Task: {self.task}", f"Instruction: {self.instruction}"]
        if self.examples:
            system_parts.append("Example:\n" + "\n\n".join(self.examples))
        user_parts = []
        if self.explanation:
            user_parts.append(f"Explanation: {self.explanation}")
        context_body = "\n\n".join(f"{name}:\n{text}" for name, text in self.context)
        user_parts.append("Context:\n" + (context_body or "(none)"))
        user_parts.append(f"Note: {self.note}")
        return [
            ChatMessage(role="system", content="\n\n".join(system_parts)),
            ChatMessage(role="user", content="\n\n".join(user_parts)),
        ]


def render_cypher_prompt(schema_text: str, question: str) -> list[ChatMessage]:
    """Stage 1: question to Cypher."""
    if not schema_text or not schema_text.strip():
        raise EmptySchema("schema text must be non-empty")
    prompt = NoticePrompt(
        task=CYPHER_TASK,
        instruction=CYPHER_INSTRUCTION,
        note=CYPHER_NOTE,
        examples=(CYPHER_EXAMPLE,),
        context=(("schema", schema_text), ("user question", question)),
    )
    return prompt.to_messages()


def render_qa_prompt(
    kg_text: str,
    literature_text: str,
    question: str,
    explanation: Optional[str] = None,
) -> list[ChatMessage]:
    """Stage 3-4: synthesize the KG rows and retrieved literature."""
    prompt = NoticePrompt(
        task=SYNTHESIS_TASK,
        instruction=SYNTHESIS_INSTRUCTION,
        note=SYNTHESIS_NOTE,
        context=(
            ("MaterialsKG information", kg_text.strip() or "(none)"),
            ("literature information", literature_text.strip() or "(none)"),
            ("user question", question),
        ),
        explanation=explanation,
    )
    return prompt.to_messages()
