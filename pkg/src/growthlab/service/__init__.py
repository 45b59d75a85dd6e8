"""HTTP facade over the growthlab core: pydantic schemas, pure handlers,
and the FastAPI app that wires them to routes."""
