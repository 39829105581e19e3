from .corpus import run_corpus
from .evaluator import Session, run_script
from .main import main
from .parser import ScriptError, parse

__all__ = ["ScriptError", "Session", "main", "parse", "run_corpus", "run_script"]
