"""Language-sample-analysis workbench for annotated child-speech transcripts."""

__version__ = "0.1.0"
