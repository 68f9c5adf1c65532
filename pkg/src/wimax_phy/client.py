"""Thin client for the simulator service.

With no base_url the service app runs in-process (no sockets), so the
CLI works standalone while staying a pure API consumer; pass a base_url
to talk to a remote `wimax-phy serve` instance instead.
"""

from __future__ import annotations

import base64

import httpx

from .engine import BerRecord


class ServiceError(RuntimeError):
    """Non-success response from the simulator service."""

    def __init__(self, status_code: int, detail: str):
        super().__init__(f"service returned {status_code}: {detail}")
        self.status_code = status_code
        self.detail = detail


class SimulatorClient:
    def __init__(self, base_url: str | None = None, timeout: float = 3600.0):
        if base_url is None:
            import warnings

            with warnings.catch_warnings():
                # this starlette build nags about its own httpx usage
                warnings.simplefilter("ignore")
                from starlette.testclient import TestClient

            from .service import create_app

            self._http = TestClient(create_app())
        else:
            self._http = httpx.Client(base_url=base_url, timeout=timeout)

    def close(self) -> None:
        self._http.close()

    def __enter__(self) -> "SimulatorClient":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def _unwrap(self, resp) -> dict:
        if resp.status_code != 200:
            try:
                detail = resp.json().get("detail", resp.text)
            except ValueError:
                detail = resp.text
            raise ServiceError(resp.status_code, str(detail))
        return resp.json()

    def health(self) -> dict:
        return self._unwrap(self._http.get("/health"))

    def defaults(self) -> dict:
        return self._unwrap(self._http.get("/defaults"))

    def reference(self, eb_n0_db: float) -> float:
        data = self._unwrap(
            self._http.get("/reference/qpsk-awgn", params={"eb_n0_db": eb_n0_db})
        )
        return data["ber"]

    def point(self, **request) -> BerRecord:
        data = self._unwrap(self._http.post("/point", json=request))
        return BerRecord(**data)

    def sweep(self, request: dict) -> tuple[list[BerRecord], list[dict]]:
        data = self._unwrap(self._http.post("/sweep", json=request))
        return [BerRecord(**r) for r in data["records"]], data["summary"]

    def audio(self, wav_bytes: bytes, **request) -> tuple[bytes, dict]:
        request["wav_base64"] = base64.b64encode(wav_bytes).decode("ascii")
        data = self._unwrap(self._http.post("/audio", json=request))
        out = base64.b64decode(data.pop("wav_base64"))
        return out, data
