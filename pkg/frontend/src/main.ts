import { ApiClient } from "./api.js";
import { ProofApp } from "./app.js";

const base = (window as { NADEUM_API?: string }).NADEUM_API ?? "";
const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");
new ProofApp(root, new ApiClient(base));
