name = "rcsp"
version = "0.1.0"
description = (
    "Certified bounds on joint decoding-error probabilities, latency and "
    "throughput of rate-compatible sphere-packing feedback schemes"
)
authors = [
    "RCSP-Bounds developers",
]
