"""
Chat Endpoint Connector
Manages an HTTP client for chat-completion endpoints with rate limiting and retries
"""

import os
import threading
import time
from typing import Callable, Optional

import allure
import httpx
from allure_commons.types import AttachmentType

from config.endpoint_config import ENDPOINT_CONFIG, RETRY_CONFIG
from fairrank.exceptions import (
    AuthError, MalformedResponseError, NetworkError, RateLimitedError
)
from utils.logger import get_logger

logger = get_logger('chat_client')


class TokenBucket:
    """Thread-safe requests-per-minute limiter shared by concurrent trials"""

    def __init__(self, requests_per_minute: float, clock: Callable[[], float] = time.monotonic,
                 sleep: Callable[[float], None] = time.sleep):
        if requests_per_minute <= 0:
            raise ValueError(f"requests_per_minute must be positive, got {requests_per_minute}")
        self.capacity = float(requests_per_minute)
        self.rate = self.capacity / 60.0
        self.tokens = self.capacity
        self.clock = clock
        self.sleep = sleep
        self.updated = clock()
        self._lock = threading.Lock()

    def acquire(self):
        while True:
            with self._lock:
                now = self.clock()
                self.tokens = min(self.capacity, self.tokens + (now - self.updated) * self.rate)
                self.updated = now
                if self.tokens >= 1.0:
                    self.tokens -= 1.0
                    return
                wait = (1.0 - self.tokens) / self.rate
            self.sleep(wait)


class ChatEndpointConnector:
    """Handle chat-completion requests"""

    def __init__(
        self,
        config: Optional[dict] = None,
        transport: Optional[httpx.BaseTransport] = None,
        sleep: Callable[[float], None] = time.sleep
    ):
        self.config = {**ENDPOINT_CONFIG, **RETRY_CONFIG, **(config or {})}
        self.transport = transport
        self.sleep = sleep
        self.client: Optional[httpx.Client] = None
        self.bucket = TokenBucket(self.config['requests_per_minute'], sleep=sleep)

    def _api_key(self) -> str:
        env_name = self.config['api_key_env']
        key = os.getenv(env_name)
        if not key:
            raise AuthError(f"API key environment variable {env_name} is not set")
        return key

    def connect(self) -> 'ChatEndpointConnector':
        """Open the HTTP client"""
        with allure.step('Connect to chat endpoint'):
            self.client = httpx.Client(
                timeout=self.config['timeout_seconds'],
                transport=self.transport,
                headers={
                    'Authorization': f"Bearer {self._api_key()}",
                    'Content-Type': 'application/json'
                }
            )
            logger.info(f"[ENDPOINT] Connected: {self.config['url']} (model {self.config['model']})")
            allure.attach(
                f"URL: {self.config['url']}\n"
                f"Model: {self.config['model']}\n"
                f"Temperature: {self.config['temperature']}\n"
                f"Requests/minute: {self.config['requests_per_minute']}",
                'Chat Endpoint Details',
                AttachmentType.TEXT
            )
            return self

    def complete(self, prompt: str) -> str:
        """
        Send one prompt and return the completion text

        Retries 429/5xx and transport errors with exponential backoff up to max_attempts.

        Raises:
            AuthError, RateLimitedError, NetworkError, MalformedResponseError
        """
        if self.client is None:
            self.connect()

        body = {
            'model': self.config['model'],
            'temperature': self.config['temperature'],
            'messages': [{'role': 'user', 'content': prompt}]
        }
        max_attempts = int(self.config['max_attempts'])
        last_error: Exception = NetworkError('no attempt made')
        for attempt in range(max_attempts):
            if attempt:
                delay = self.config['backoff_base_seconds'] * 2 ** (attempt - 1)
                logger.warning(f"[ENDPOINT] Retry {attempt}/{max_attempts - 1} in {delay:.1f}s: {last_error}")
                self.sleep(delay)

            self.bucket.acquire()
            try:
                response = self.client.post(self.config['url'], json=body)
            except httpx.HTTPError as e:
                last_error = NetworkError(f"request failed: {e}")
                continue

            if response.status_code in (401, 403):
                raise AuthError(f"endpoint rejected credentials (HTTP {response.status_code})")
            if response.status_code == 429:
                last_error = RateLimitedError("endpoint rate limit hit (HTTP 429)")
                continue
            if response.status_code in self.config['retry_statuses']:
                last_error = NetworkError(f"endpoint error (HTTP {response.status_code})")
                continue
            if response.status_code >= 400:
                raise NetworkError(f"endpoint error (HTTP {response.status_code}): {response.text[:200]}")
            return self._extract_text(response)

        raise last_error

    @staticmethod
    def _extract_text(response: httpx.Response) -> str:
        try:
            content = response.json()['choices'][0]['message']['content']
        except (ValueError, KeyError, IndexError, TypeError) as e:
            raise MalformedResponseError(f"unexpected response shape: {e!r}") from None
        if not isinstance(content, str):
            raise MalformedResponseError("completion content is not text")
        return content

    def close(self):
        """Close the HTTP client"""
        if self.client is not None:
            self.client.close()
            self.client = None
            logger.info("[ENDPOINT] Connection closed")

    def __enter__(self):
        return self.connect()

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()
