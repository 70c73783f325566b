"""scholiview: visual summaries of scholarly videos.

Turns automatically generated video metadata (speech transcripts and
ASR/OCR/visual-concept entities) into an interactive visual summary: a
semantically arranged bubble diagram of key entities plus a per-segment
keyphrase table, emitted as JSON and static HTML.
"""

__version__ = "0.1.0"
