// Entry-condition expressions: TRUE, option names, AND/OR (AND binds
// tighter), parentheses. The picker evaluates these client-side so options
// enable exactly when the server would accept them.

export type EntryExpr =
  | { kind: "true" }
  | { kind: "option"; option: string }
  | { kind: "all"; terms: EntryExpr[] }
  | { kind: "any"; terms: EntryExpr[] };

const TOKEN = /\s*(\(|\)|AND\b|OR\b|TRUE\b|[A-Za-z0-9][A-Za-z0-9_-]*)/y;

export function parseEntry(text: string): EntryExpr {
  const tokens: string[] = [];
  const stripped = text.trim();
  let pos = 0;
  while (pos < stripped.length) {
    TOKEN.lastIndex = pos;
    const match = TOKEN.exec(stripped);
    if (!match || match[1] === undefined) {
      throw new Error(`bad entry condition near ${stripped.slice(pos, pos + 20)}`);
    }
    tokens.push(match[1]);
    pos = TOKEN.lastIndex;
  }
  if (tokens.length === 0) throw new Error("empty entry condition");

  let i = 0;

  function parseOr(): EntryExpr {
    const terms = [parseAnd()];
    while (tokens[i] === "OR") {
      i += 1;
      terms.push(parseAnd());
    }
    return terms.length === 1 ? terms[0]! : { kind: "any", terms };
  }

  function parseAnd(): EntryExpr {
    const terms = [parseAtom()];
    while (tokens[i] === "AND") {
      i += 1;
      terms.push(parseAtom());
    }
    return terms.length === 1 ? terms[0]! : { kind: "all", terms };
  }

  function parseAtom(): EntryExpr {
    const tok = tokens[i];
    if (tok === undefined) throw new Error(`entry condition ends early: ${text}`);
    if (tok === "(") {
      i += 1;
      const expr = parseOr();
      if (tokens[i] !== ")") throw new Error(`unbalanced parentheses in ${text}`);
      i += 1;
      return expr;
    }
    if (tok === "TRUE") {
      i += 1;
      return { kind: "true" };
    }
    if (tok === ")" || tok === "AND" || tok === "OR") {
      throw new Error(`unexpected ${tok} in entry condition ${text}`);
    }
    i += 1;
    return { kind: "option", option: tok };
  }

  const expr = parseOr();
  if (i !== tokens.length) throw new Error(`trailing tokens in entry condition ${text}`);
  return expr;
}

export function evalEntry(expr: EntryExpr, selected: ReadonlySet<string>): boolean {
  switch (expr.kind) {
    case "true":
      return true;
    case "option":
      return selected.has(expr.option);
    case "all":
      return expr.terms.every((t) => evalEntry(t, selected));
    case "any":
      return expr.terms.some((t) => evalEntry(t, selected));
  }
}
