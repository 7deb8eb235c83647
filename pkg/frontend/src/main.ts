import { PortalApp } from "./app.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");

// same-origin by default; override for a gateway on another port:
//   <body data-gateway="http://127.0.0.1:3000">
const baseUrl = document.body.dataset.gateway ?? "";
new PortalApp(root, baseUrl).start();
