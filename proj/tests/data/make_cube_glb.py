"""Writes cube.glb: an axis-aligned cube [-1, 1]^3, 8 vertices, 12 faces.

Built with the standard library only so the GLB reader is checked against
bytes it did not produce.
"""
import json
import struct

V = [(x, y, z) for x in (-1.0, 1.0) for y in (-1.0, 1.0) for z in (-1.0, 1.0)]
# Index of (x, y, z) with bits x=4, y=2, z=1.
F = [
    (0, 1, 3), (0, 3, 2),  # x = -1
    (4, 6, 7), (4, 7, 5),  # x = +1
    (0, 4, 5), (0, 5, 1),  # y = -1
    (2, 3, 7), (2, 7, 6),  # y = +1
    (0, 2, 6), (0, 6, 4),  # z = -1
    (1, 5, 7), (1, 7, 3),  # z = +1
]

pos = b"".join(struct.pack("<3f", *v) for v in V)
idx = b"".join(struct.pack("<3H", *f) for f in F)
idx += b"\0" * (-len(idx) % 4)
binary = pos + idx

doc = {
    "asset": {"version": "2.0"},
    "scene": 0,
    "scenes": [{"nodes": [0]}],
    "nodes": [{"mesh": 0}],
    "meshes": [{"primitives": [{"attributes": {"POSITION": 0}, "indices": 1}]}],
    "buffers": [{"byteLength": len(binary)}],
    "bufferViews": [
        {"buffer": 0, "byteOffset": 0, "byteLength": len(pos), "target": 34962},
        {"buffer": 0, "byteOffset": len(pos), "byteLength": 12 * 6, "target": 34963},
    ],
    "accessors": [
        {"bufferView": 0, "componentType": 5126, "count": 8, "type": "VEC3",
         "min": [-1, -1, -1], "max": [1, 1, 1]},
        {"bufferView": 1, "componentType": 5123, "count": 36, "type": "SCALAR"},
    ],
}
js = json.dumps(doc, separators=(",", ":")).encode()
js += b" " * (-len(js) % 4)
total = 12 + 8 + len(js) + 8 + len(binary)
with open("cube.glb", "wb") as out:
    out.write(struct.pack("<4sII", b"glTF", 2, total))
    out.write(struct.pack("<I4s", len(js), b"JSON") + js)
    out.write(struct.pack("<I4s", len(binary), b"BIN\0") + binary)
