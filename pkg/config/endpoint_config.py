import os

# Chat Endpoint Configuration
# The API key itself is never stored here; only the name of the variable holding it.
ENDPOINT_CONFIG = {
    'url': os.getenv('FAIRRANK_ENDPOINT_URL', 'https://api.openai.com/v1/chat/completions'),
    'api_key_env': 'FAIRRANK_API_KEY',
    'model': os.getenv('FAIRRANK_MODEL', 'gpt-4o-mini'),
    'temperature': 0.1,
    'timeout_seconds': 30,
    'requests_per_minute': float(os.getenv('FAIRRANK_REQUESTS_PER_MINUTE', '60'))
}

# Retry Configuration
RETRY_CONFIG = {
    'max_attempts': 5,
    'backoff_base_seconds': 1.0,
    'retry_statuses': [429, 500, 502, 503, 504]
}
