#pragma once

#include <string>

#include "plurilag/fields.hpp"
#include "plurilag/surface.hpp"

namespace plurilag::io {

// Surface file: {"m": 3, "squares": [{"base": [0,0,0], "dirs": [1,2]}, ...]}.
// Malformed documents raise ParseError naming the offending square index;
// geometric violations surface as CellError from the surface constructor.
lattice::QuadSurface load_surface(const std::string& path);
std::string surface_to_json(const lattice::QuadSurface& s);

// Field file: {"m": 3, "values": [{"at": [0,0,0], "value": 1.5}, ...]}.
forms::FieldMap load_fields(const std::string& path);
std::string fields_to_json(const forms::FieldMap& f);

std::string read_text(const std::string& path); // ParseError when unreadable
void write_text(const std::string& path, const std::string& text);

} // namespace plurilag::io
