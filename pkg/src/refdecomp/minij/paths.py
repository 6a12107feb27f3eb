"""Node addressing: paths of child indices rooted at the method body.

The empty path resolves to the body itself (a tuple of statements); a path
``[i, ...]`` descends into the i-th statement and then through flattened
child indices as defined by ``nodes.child_nodes``.
"""

from __future__ import annotations

from collections.abc import Iterator

from .nodes import MethodAst, Node, child_nodes, replace_child


class InvalidPathError(Exception):
    pass


NodePath = tuple[int, ...]


def resolve_path(ast: MethodAst, path: NodePath) -> Node | tuple[Node, ...]:
    """Return the node addressed by ``path`` (the body tuple for the empty path)."""
    if not path:
        return ast.body
    i, rest = path[0], path[1:]
    if not 0 <= i < len(ast.body):
        raise InvalidPathError(f"index {i} out of range for method body")
    node: Node = ast.body[i]
    for step in rest:
        kids = child_nodes(node)
        if not 0 <= step < len(kids):
            raise InvalidPathError(f"index {step} out of range for {type(node).__name__}")
        node = kids[step]
    return node


def replace_at(ast: MethodAst, path: NodePath, new_node: Node) -> MethodAst:
    """Rebuild the method with the node at ``path`` replaced."""
    if not path:
        raise InvalidPathError("cannot replace the body root; use replace_body")
    i = path[0]
    if not 0 <= i < len(ast.body):
        raise InvalidPathError(f"index {i} out of range for method body")

    def rebuild(node: Node, rest: NodePath) -> Node:
        if not rest:
            return new_node
        kids = child_nodes(node)
        step = rest[0]
        if not 0 <= step < len(kids):
            raise InvalidPathError(f"index {step} out of range for {type(node).__name__}")
        return replace_child(node, step, rebuild(kids[step], rest[1:]))

    body = list(ast.body)
    body[i] = rebuild(body[i], path[1:])
    return MethodAst(ast.name, ast.params, ast.return_type, tuple(body))


def replace_body(ast: MethodAst, new_body: tuple[Node, ...]) -> MethodAst:
    return MethodAst(ast.name, ast.params, ast.return_type, tuple(new_body))


def walk(ast: MethodAst) -> Iterator[tuple[NodePath, Node]]:
    """Preorder traversal of the body, yielding (path, node) in document order."""

    def visit(node: Node, path: NodePath) -> Iterator[tuple[NodePath, Node]]:
        yield path, node
        for i, child in enumerate(child_nodes(node)):
            yield from visit(child, path + (i,))

    for i, stmt in enumerate(ast.body):
        yield from visit(stmt, (i,))
