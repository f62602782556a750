import { describe, expect, it } from "vitest";

import { evalEntry, parseEntry } from "../src/entry.js";

describe("entry-condition language", () => {
  it("parses TRUE, options, AND/OR with precedence", () => {
    expect(evalEntry(parseEntry("TRUE"), new Set())).toBe(true);
    expect(evalEntry(parseEntry("decision"), new Set(["decision"]))).toBe(true);
    expect(evalEntry(parseEntry("decision"), new Set(["issue"]))).toBe(false);
    const expr = parseEntry("a AND b OR c");
    expect(evalEntry(expr, new Set(["c"]))).toBe(true);
    expect(evalEntry(expr, new Set(["a", "b"]))).toBe(true);
    expect(evalEntry(expr, new Set(["a"]))).toBe(false);
  });

  it("honors parentheses", () => {
    const expr = parseEntry("(a OR b) AND c");
    expect(evalEntry(expr, new Set(["a", "c"]))).toBe(true);
    expect(evalEntry(expr, new Set(["a"]))).toBe(false);
  });

  it("rejects malformed expressions", () => {
    for (const bad of ["", "AND", "a AND", "(a", "a b", "a OR )"]) {
      expect(() => parseEntry(bad)).toThrow();
    }
  });
});
