from extractor.quantizer import quantize, align
from extractor.sketch import sketch_generate, sketch_recover, serialize_sketch, parse_sketch
from extractor.amplify import privacy_amplify
from extractor.pipeline import extract_shared_key, subcarrier_decorrelate, attacker_recover

__all__ = [
    "quantize",
    "align",
    "sketch_generate",
    "sketch_recover",
    "serialize_sketch",
    "parse_sketch",
    "privacy_amplify",
    "extract_shared_key",
    "subcarrier_decorrelate",
    "attacker_recover",
]
