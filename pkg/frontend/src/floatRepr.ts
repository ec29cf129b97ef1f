/** Render a double exactly as Python's repr would.
 *
 * CSV exports must be byte-identical to the server CLI's, and the CLI
 * prints floats with repr: shortest round-trip digits, fixed notation
 * for decimal exponents in [-4, 16), otherwise scientific with a
 * signed, zero-padded, at-least-two-digit exponent. JS toExponential()
 * without arguments yields the same shortest digit string, so only the
 * formatting conventions need translating.
 */

export function pyFloatRepr(x: number): string {
  if (Number.isNaN(x)) {
    return "nan";
  }
  if (!Number.isFinite(x)) {
    return x > 0 ? "inf" : "-inf";
  }
  if (x === 0) {
    return Object.is(x, -0) ? "-0.0" : "0.0";
  }

  const sign = x < 0 ? "-" : "";
  const parts = Math.abs(x)
    .toExponential()
    .match(/^(\d)(?:\.(\d+))?e([+-]\d+)$/);
  if (!parts) {
    throw new Error(`unexpected exponential form for ${x}`);
  }
  const digits = parts[1] + (parts[2] ?? "");
  const e10 = parseInt(parts[3], 10);

  if (e10 < -4 || e10 >= 16) {
    const mantissa =
      digits.length > 1 ? `${digits[0]}.${digits.slice(1)}` : digits[0];
    const expSign = e10 < 0 ? "-" : "+";
    const expDigits = String(Math.abs(e10)).padStart(2, "0");
    return `${sign}${mantissa}e${expSign}${expDigits}`;
  }
  if (e10 >= 0) {
    if (e10 + 1 >= digits.length) {
      return `${sign}${digits.padEnd(e10 + 1, "0")}.0`;
    }
    return `${sign}${digits.slice(0, e10 + 1)}.${digits.slice(e10 + 1)}`;
  }
  return `${sign}0.${"0".repeat(-e10 - 1)}${digits}`;
}
