#pragma once
#include <string>

#include "tame3/amalgam.hpp"
#include "tame3/discdiag.hpp"
#include "tame3/nabla.hpp"

namespace tame3 {

std::string svg_arrangement(const Arrangement& arr);
// Faces of the window's arrangement lying in the fixed region of f are shaded.
std::string svg_fixed_region(const Automorphism& f, const Window& w);
std::string svg_strip(const InvariantStrip& s, int periods = 2);
std::string svg_diagram(const DiscDiagram& d);

void write_text_file(const std::string& path, const std::string& content);  // IOError

}  // namespace tame3
