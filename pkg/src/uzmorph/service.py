"""HTTP analysis service.

POST /analyze takes {"tokens": [{"text": ..., "pos": ...}, ...]} (pos
optional) and returns {"results": [...]} with one record per token in
request order.  A token that cannot be analyzed yields an inline
{"token", "error"} record instead of failing the whole request.  GET
/health reports the lexicon fingerprint; it serves 503 until the lexicon
is loaded.

The engine is immutable after load and analysis is pure, so identical
requests get byte-identical responses.
"""

from typing import List, Optional

import click
import uvicorn
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .analyzer import Engine, render
from .errors import UzMorphError

#: hard cap on tokens per request
MAX_TOKENS = 1000


class TokenQuery(BaseModel):
    text: str
    pos: Optional[str] = None


class AnalyzeRequest(BaseModel):
    tokens: List[TokenQuery]


def _record(analysis) -> dict:
    return {
        "token": analysis.token.text,
        "stem": analysis.stem,
        "lemma": analysis.lemma,
        "pos": analysis.pos.value,
        "ending": analysis.ending,
        "features": list(analysis.features),
        "segments": [{"surface": surface, "feature": feature}
                     for surface, feature in analysis.segments],
        "rendered": render(analysis),
    }


def create_app(data_dir=None, load: bool = True) -> FastAPI:
    app = FastAPI(title="uzmorph", docs_url=None, redoc_url=None)
    app.state.engine = Engine.load(data_dir) if load else None

    @app.exception_handler(RequestValidationError)
    async def malformed_request(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400,
                            content={"error": "MalformedRequest"})

    @app.post("/analyze")
    async def analyze(request: AnalyzeRequest):
        engine = app.state.engine
        if engine is None:
            return JSONResponse(status_code=503, content={"error": "LexiconNotLoaded"})
        if len(request.tokens) > MAX_TOKENS:
            return JSONResponse(
                status_code=413,
                content={"error": "TooManyTokens", "limit": MAX_TOKENS})
        results = []
        for item in request.tokens:
            try:
                best = engine.analyze(item.text, pos_hint=item.pos).best
                results.append(_record(best))
            except UzMorphError as err:
                results.append({"token": item.text, "error": err.code})
        return {"results": results}

    @app.get("/health")
    async def health():
        engine = app.state.engine
        if engine is None:
            return JSONResponse(status_code=503, content={"status": "loading"})
        return {
            "status": "ok",
            "entries": {pos.value: count
                        for pos, count in engine.bundle.entry_counts.items()},
            "fingerprint": engine.bundle.fingerprint,
        }

    return app


@click.command()
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--data", "data_dir", envvar="UZMORPH_DATA", default=None,
              metavar="DIR", help="Lexicon data directory (or $UZMORPH_DATA).")
def main(port, host, data_dir):
    """Serve the analyzer over HTTP."""
    uvicorn.run(create_app(data_dir), host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
