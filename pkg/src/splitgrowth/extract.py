"""Approximate "depends on" graph of a Java source tree from import statements.

Lexical only: comments and literals are blanked, then package
declarations, import statements and top-level type declarations are read
with regular expressions. There is no name resolution, so same-package
references and references written with fully qualified names in code
bodies do not produce edges.

A node is a top-level type declared in the corpus (``package.Name``). For
each single-type import in a file that names a corpus type (or a type
nested in one), every top-level type of that file gets an edge to it.
Everything else is tallied by kind in ``EdgeList.skipped``:

    wildcard_import   ``import a.b.*;``
    static_import     ``import static ...;``
    external_import   single-type import of a type outside the corpus
    self_import       import of a type declared in the same file
    duplicate_import  the same import repeated in one file
    fqn_reference     qualified name of a corpus type used in a body
    duplicate_type    a type name declared by more than one file
    no_types          file without a top-level type declaration
    unreadable_file   file that could not be read
"""

import logging
import os
import re
from collections import Counter

from .ingest import EdgeList

log = logging.getLogger(__name__)

SKIP_KINDS = ("wildcard_import", "static_import", "external_import", "self_import",
              "duplicate_import", "fqn_reference", "duplicate_type", "no_types",
              "unreadable_file")

_LEXEME = re.compile(
    r'"""(?:\\.|[^\\])*?"""'           # text block
    r'|"(?:\\.|[^"\\\n])*"'            # string
    r"|'(?:\\.|[^'\\\n])*'"            # char
    r"|//[^\n]*"                       # line comment
    r"|/\*.*?\*/",                     # block comment
    re.S,
)
_PACKAGE = re.compile(r"^\s*package\s+([\w$]+(?:\s*\.\s*[\w$]+)*)\s*;", re.M)
_IMPORT = re.compile(
    r"^\s*import\s+(static\s+)?([\w$]+(?:\s*\.\s*[\w$]+)*)(\s*\.\s*\*)?\s*;", re.M)
_TYPE_DECL = re.compile(r"(?<![\w$.])(?:class|interface|enum|record)\s+([A-Za-z_$][\w$]*)")
_QUALIFIED = re.compile(r"(?<![\w$.])([a-z_$][\w$]*(?:\.[\w$]+)+)")


def blank_literals(src):
    """Replace comments and string/char literals with spaces, keeping newlines."""
    def repl(m):
        return re.sub(r"[^\n]", " ", m.group(0))
    return _LEXEME.sub(repl, src)


def _top_level_text(src):
    # drop everything inside braces and parentheses
    out = []
    depth = 0
    for ch in src:
        if ch in "{(":
            depth += 1
        elif ch in "})":
            depth = max(depth - 1, 0)
        elif depth == 0:
            out.append(ch)
    return "".join(out)


def _body_text(src):
    out = []
    depth = 0
    for ch in src:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth = max(depth - 1, 0)
        if depth > 0:
            out.append(ch)
    return "".join(out)


def _squash(name):
    return re.sub(r"\s+", "", name)


class JavaFile:
    """Lexical summary of one compilation unit."""

    def __init__(self, path, text):
        self.path = path
        clean = blank_literals(text)
        m = _PACKAGE.search(clean)
        self.package = _squash(m.group(1)) if m else ""
        self.imports = []
        for m in _IMPORT.finditer(clean):
            self.imports.append((bool(m.group(1)), _squash(m.group(2)), bool(m.group(3))))
        header_free = _IMPORT.sub("", _PACKAGE.sub("", clean))
        names = []
        for m in _TYPE_DECL.finditer(_top_level_text(header_free)):
            if m.group(1) not in names:
                names.append(m.group(1))
        self.types = names
        self.body = _body_text(header_free)

    def qualified(self, name):
        return f"{self.package}.{name}" if self.package else name


def _java_files(root):
    found = []
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames.sort()
        for fn in sorted(filenames):
            if fn.endswith(".java"):
                found.append(os.path.join(dirpath, fn))
    return sorted(found, key=lambda p: os.path.relpath(p, root))


def _resolve(name, corpus):
    # longest prefix naming a corpus type: covers imports of nested types
    parts = name.split(".")
    for i in range(len(parts), 0, -1):
        cand = ".".join(parts[:i])
        if cand in corpus:
            return cand
    return None


def extract_import_graph(root):
    """Scan ``root`` for ``*.java`` files and build the import graph.

    Edges come out sorted by ``(source, target)``; every declared type is
    a node, including types with no edges.
    """
    skipped = Counter({k: 0 for k in SKIP_KINDS})
    files = []
    for path in _java_files(root):
        try:
            with open(path, encoding="utf-8", errors="replace") as fh:
                text = fh.read()
        except OSError as exc:
            log.warning("skipping unreadable file %s: %s", path, exc)
            skipped["unreadable_file"] += 1
            continue
        files.append(JavaFile(path, text))

    owner = {}
    for jf in files:
        if not jf.types:
            skipped["no_types"] += 1
        for name in jf.types:
            fqn = jf.qualified(name)
            if fqn in owner:
                skipped["duplicate_type"] += 1
                continue
            owner[fqn] = jf

    edges = set()
    for jf in files:
        mine = [jf.qualified(n) for n in jf.types if owner.get(jf.qualified(n)) is jf]
        seen = set()
        for static, name, wildcard in jf.imports:
            key = (static, name, wildcard)
            if key in seen:
                skipped["duplicate_import"] += 1
                continue
            seen.add(key)
            if static:
                skipped["static_import"] += 1
                continue
            if wildcard:
                skipped["wildcard_import"] += 1
                continue
            target = _resolve(name, owner)
            if target is None:
                skipped["external_import"] += 1
                continue
            if owner[target] is jf:
                skipped["self_import"] += 1
                continue
            for src in mine:
                edges.add((src, target))
        for m in _QUALIFIED.finditer(jf.body):
            target = _resolve(m.group(1), owner)
            if target is not None and "." in target:
                skipped["fqn_reference"] += 1

    return EdgeList(tuple(sorted(edges)), tuple(sorted(owner)), dict(skipped))


def format_report(el):
    """``key=value`` lines of the skipped-construct tally."""
    return "".join(f"skipped.{k}={el.skipped.get(k, 0)}\n" for k in SKIP_KINDS)
