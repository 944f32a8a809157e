"""HTTP front end: pydantic models, a FastAPI app, and the shared ops layer.

The command-line tool calls the same ops functions in-process, so both
front ends emit identical records for identical inputs.
"""
