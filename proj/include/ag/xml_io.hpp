#ifndef AG_XML_IO_HPP
#define AG_XML_IO_HPP

#include <string>
#include <string_view>

#include "ag/graph.hpp"

namespace ag::xmlio {

/// Serializes a valid graph to the toolkit's XML interchange form:
///
///   <?xml version="1.0" encoding="UTF-8"?>
///   <annotation-graph timeline="...">
///     <node id="n0" t="2186"/>
///     <arc id="a0" from="n0" to="n1" type="W/" label="Metric"
///          provenance="..." channel="B"/>
///   </annotation-graph>
///
/// Times are integer centiseconds. Output is deterministic: anchored nodes
/// sorted by (t, id) before unanchored nodes sorted by id, arcs sorted by
/// id, fixed attribute order. Throws Error(Validation) with the violation
/// report when the graph is invalid.
std::string write_xml(const AnnotationGraph& graph);

/// Parses the interchange form back into a graph. Opaque ids are
/// regenerated in document order; round-tripping yields an isomorphic
/// graph, not identical ids. Throws ParseError with position on malformed
/// documents, Error(Reference) on dangling node references, and
/// Error(Validation) when the document encodes an invalid graph.
AnnotationGraph read_xml(std::string_view bytes);

}  // namespace ag::xmlio

#endif  // AG_XML_IO_HPP
