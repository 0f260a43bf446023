"""
Canonical form and the validation service
=========================================

Every surface of the toolkit emits documents in one canonical byte form:
fixed key order, cardinality-aware value shapes, two-space indentation,
UTF-8, trailing newline.  The demo canonicalizes a messy document, shows
idempotence, then serves the validator over HTTP and queries it.
"""

import json
import threading
import urllib.request

from croissant_rai import builtin, canonicalize, from_value
from croissant_rai.service import create_server

registry = builtin()

# --- canonicalization ----------------------------------------------------
# Keys arrive in arbitrary order; single-valued properties may arrive as
# one-element arrays and multi-valued ones as bare scalars.  The canonical
# form fixes the order and the shapes.

messy = {
    "rai:dataBiases": "Labels skew toward urban imagery",
    "name": "demo set",
    "dct:conformsTo": "https://mlcommons.org/croissant/RAI/1.0/",
    "rai:dataCollection": ["One-sentence summary of the collection process"],
    "@type": "schema.org/Dataset",
}

first = canonicalize(from_value(messy), registry)
print(first.decode("utf-8"))

second = canonicalize(from_value(json.loads(first)), registry)
print("idempotent:", first == second)
print()

# --- the HTTP service ------------------------------------------------------
# The service is stateless: the same bytes the command line prints come
# back as response bodies.  Run it on an ephemeral port for the demo.

server = create_server("127.0.0.1", 0, registry)
thread = threading.Thread(target=server.serve_forever, daemon=True)
thread.start()
port = server.server_address[1]
base = f"http://127.0.0.1:{port}"
print(f"service listening on {base}")

health = urllib.request.urlopen(f"{base}/v1/health").read()
print("health:", health.decode().strip())

request = urllib.request.Request(
    f"{base}/v1/validate",
    data=first,
    headers={"Content-Type": "application/json"},
    method="POST",
)
body = urllib.request.urlopen(request).read()
print("validation response:")
print(body.decode("utf-8"))

server.shutdown()
server.server_close()
