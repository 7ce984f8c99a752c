"""HTTP layer: pydantic shapes in schemas, the FastAPI app in app."""
